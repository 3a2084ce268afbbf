#include "vchow/rational.hpp"
#include "vchow/errors.hpp"

namespace vchow {

Rat rat_of(long num, long den) {
    if (den == 0) throw MathError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw SchemaError("empty rational literal");
    std::string::size_type slash = s.find('/');
    auto is_int_literal = [](const std::string& t) {
        if (t.empty()) return false;
        std::string::size_type i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!is_int_literal(num) || !is_int_literal(den))
        throw SchemaError("bad rational literal '" + s + "'");
    Int n(num), d(den);
    if (d == 0) throw SchemaError("zero denominator in '" + s + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

bool is_integer(const Rat& r) {
    return r.get_den() == 1;
}

Int binom(long a, long k) {
    if (k < 0) return 0;
    Int n(a), out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

} // namespace vchow
