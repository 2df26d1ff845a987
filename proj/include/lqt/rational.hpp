#pragma once

#include <gmpxx.h>

#include <string>

#include "lqt/errors.hpp"

namespace lqt {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as we canonicalize after raw string input.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p/q" or "p" with decimal integers. Rejects everything else.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw InputError("empty fraction string");
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw InputError("bad fraction string: \"" + s + "\"");
    }
    Rat q;
    if (q.set_str(s, 10) != 0) throw InputError("bad fraction string: \"" + s + "\"");
    if (q.get_den() == 0) throw InputError("zero denominator in \"" + s + "\"");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace lqt
