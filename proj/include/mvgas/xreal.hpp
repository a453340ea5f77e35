#ifndef MVGAS_XREAL_HPP
#define MVGAS_XREAL_HPP

#include <cstdint>
#include <ostream>

#include "mvgas/errors.hpp"

namespace mvgas {

// Extended real value with explicit +inf / -inf markers.  Entropy-type
// observables on the phase space Q take these values at vacuum and
// non-physical states; keeping the marker out of ordinary double
// arithmetic avoids sentinel floats leaking into integrals.
class XReal {
public:
    enum class Kind : std::uint8_t { Finite, PosInf, NegInf };

    XReal() = default;
    /*implicit*/ XReal(double v) : value_(v) {}

    static XReal pos_inf() { XReal x; x.kind_ = Kind::PosInf; return x; }
    static XReal neg_inf() { XReal x; x.kind_ = Kind::NegInf; return x; }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    // Finite value; throws if the marker is an infinity.
    double value() const {
        if (!finite()) throw DomainError("XReal: extended value has no finite part");
        return value_;
    }

    XReal operator+(const XReal& o) const {
        if (finite() && o.finite()) return XReal(value_ + o.value_);
        if (is_pos_inf() && o.is_neg_inf()) throw DomainError("XReal: +inf + -inf");
        if (is_neg_inf() && o.is_pos_inf()) throw DomainError("XReal: -inf + +inf");
        if (is_pos_inf() || o.is_pos_inf()) return pos_inf();
        return neg_inf();
    }

    // Scale by a positive weight (measure expectations).
    XReal scaled(double w) const {
        if (w < 0.0) throw DomainError("XReal::scaled: negative weight");
        if (finite()) return XReal(value_ * w);
        if (w == 0.0) return XReal(0.0);
        return *this;
    }

    bool operator==(const XReal& o) const {
        if (kind_ != o.kind_) return false;
        return !finite() || value_ == o.value_;
    }

private:
    double value_ = 0.0;
    Kind kind_ = Kind::Finite;
};

inline std::ostream& operator<<(std::ostream& os, const XReal& x) {
    if (x.is_pos_inf()) return os << "+inf";
    if (x.is_neg_inf()) return os << "-inf";
    return os << x.value();
}

} // namespace mvgas

#endif
