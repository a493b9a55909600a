#pragma once

#include <stdexcept>
#include <string>

namespace cmroot {

// Error conditions raised by the library.  Each operation documents which of
// these it can produce; everything else is a logic error (assert/abort).
enum class Errc {
    zero_input,
    even_input,
    not_prime,
    not_coprime,
    even_modulus,
    even_place,
    factorization_limit,
    reciprocity_precondition,
    table_miss,
    bad_reduction,
    good_reduction,
    effort_bound,
    search_exhausted,
    unsupported_even_bad_reduction,
    unsnapped,
    inadmissible_system,
    invalid_shape,
    parse_error,
    usage,
    internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace cmroot
