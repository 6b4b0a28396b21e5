#pragma once

#include <stdexcept>
#include <string>

namespace qkit {

// Machine-readable failure kinds; every throwing operation documents which
// kinds it can raise. Messages always name the offending data (pair, triple,
// object, ...) so failures are actionable without a debugger.
enum class errc {
  not_a_partial_order,
  not_a_lattice,
  type_mismatch,
  no_involution,
  not_symmetric,
  not_left_adjoint,
  search_cap_exceeded,
  not_a_groupoid,
  not_commutative,
  not_distributive,
  premise_violated,
  not_bilateral,
  topology_axiom_violated,
  bad_input,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code),
        message_(msg) {}

  errc code() const { return code_; }
  // The message without the code-name prefix that what() carries.
  const std::string& message() const { return message_; }

 private:
  errc code_;
  std::string message_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw error(code, msg);
}

}  // namespace qkit
