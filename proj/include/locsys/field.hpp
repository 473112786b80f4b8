#pragma once

/// Exact scalar arithmetic over prime fields F_p and the rationals.
///
/// A Field value describes the ground field; Scalar is mpq_class in both
/// cases (prime residues are stored as canonical integers in [0, p)).
/// All arithmetic is exact; there are no tolerance parameters anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "locsys/errors.hpp"

namespace locsys {

using Scalar = mpq_class;

class Field {
public:
    enum class Kind { prime, rational };

    Field() : kind_(Kind::rational), p_(0) {}

    static Field rationals() { return Field(); }

    static Field prime(std::int64_t p) {
        if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(p))
            throw Error("not a prime in [2, 2^31): " + std::to_string(p));
        Field f;
        f.kind_ = Kind::prime;
        f.p_ = p;
        return f;
    }

    /// Parses "Q" or "Fp:<p>".
    static Field parse(const std::string& s) {
        if (s == "Q") return rationals();
        if (s.rfind("Fp:", 0) == 0) return prime(std::stoll(s.substr(3)));
        throw ParseError("bad field spec: " + s);
    }

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::rational; }
    std::int64_t characteristic() const { return kind_ == Kind::prime ? p_ : 0; }

    std::string str() const {
        return is_rational() ? "Q" : "Fp:" + std::to_string(p_);
    }

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }

    Scalar from_int(long v) const {
        if (is_rational()) return Scalar(v);
        mpz_class r = mpz_class(v) % p_;
        if (r < 0) r += p_;
        return Scalar(r);
    }

    /// Canonical representative: reduces mod p for prime fields,
    /// lowest terms with positive denominator for rationals.
    Scalar reduce(const Scalar& a) const {
        Scalar r = a;
        r.canonicalize();
        if (!is_rational()) {
            if (r.get_den() != 1) {
                // a residue given as a fraction: interpret n/d as n * d^{-1}
                Scalar n(r.get_num()), d(r.get_den());
                return mul(reduce_int(n), inv(reduce_int(d)));
            }
            return reduce_int(r);
        }
        return r;
    }

    Scalar add(const Scalar& a, const Scalar& b) const {
        if (is_rational()) return a + b;
        mpz_class n = a.get_num() + b.get_num();
        n %= p_;
        if (n < 0) n += p_;
        return Scalar(n);
    }

    Scalar sub(const Scalar& a, const Scalar& b) const {
        if (is_rational()) return a - b;
        mpz_class n = a.get_num() - b.get_num();
        n %= p_;
        if (n < 0) n += p_;
        return Scalar(n);
    }

    Scalar mul(const Scalar& a, const Scalar& b) const {
        if (is_rational()) return a * b;
        mpz_class n = a.get_num() * b.get_num();
        n %= p_;
        if (n < 0) n += p_;
        return Scalar(n);
    }

    Scalar neg(const Scalar& a) const {
        if (is_rational()) return -a;
        if (a == 0) return a;
        return Scalar(mpz_class(p_ - a.get_num()));
    }

    Scalar inv(const Scalar& a) const {
        if (a == 0) throw Error("division by zero");
        if (is_rational()) return Scalar(1) / a;
        mpz_class r;
        mpz_class n = a.get_num();
        if (mpz_invert(r.get_mpz_t(), n.get_mpz_t(), mpz_class(p_).get_mpz_t()) == 0)
            throw Error("non-invertible residue");
        return Scalar(r);
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /// Serialized form: decimal integer for residues, "a/b" for rationals.
    std::string to_string(const Scalar& a) const {
        if (!is_rational()) return a.get_num().get_str();
        return a.get_num().get_str() + "/" + a.get_den().get_str();
    }

    Scalar from_string(const std::string& s) const {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                Scalar v{mpz_class(s)};
                return reduce(v);
            }
            mpz_class num(s.substr(0, slash)), den(s.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator: " + s);
            Scalar v;
            v.get_num() = num;
            v.get_den() = den;
            return reduce(v);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad scalar: " + s);
        }
    }

private:
    static bool is_prime(std::int64_t p) {
        if (p < 2) return false;
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    Scalar reduce_int(const Scalar& a) const {
        mpz_class n = a.get_num() % p_;
        if (n < 0) n += p_;
        return Scalar(n);
    }

    Kind kind_;
    std::int64_t p_;
};

}  // namespace locsys
