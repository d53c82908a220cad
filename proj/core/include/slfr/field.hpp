#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slfr/errors.hpp"

namespace slfr {

/// Canonical element representative: integer in [0, q) whose base-p digits
/// are the polynomial-basis coordinates.
using Elem = std::uint16_t;

/// Arithmetic context for GF(q), q = p^m a prime power with q <= 2^16.
///
/// Prime fields (m = 1) use modular arithmetic; extension fields multiply
/// and invert through log/antilog tables built eagerly at construction.
/// The reduction polynomial is the lexicographically least monic
/// irreducible of degree m over GF(p), so two Field objects with the same
/// q are interchangeable. Immutable after construction; all operations
/// are pure and thread-safe.
class Field {
public:
    /// Throws NotPrimePower if q is not a prime power, Unsupported if q > 2^16.
    explicit Field(unsigned q);

    unsigned q() const { return q_; }
    unsigned characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    /// Monic reduction polynomial, constant term first; empty when m = 1.
    const std::vector<Elem>& reduction_poly() const { return poly_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem minus_one() const { return neg(1); }
    /// (-1)^parity as a field element.
    Elem sign(std::uint64_t parity) const { return (parity & 1) ? minus_one() : one(); }

    /// Validates that v is a canonical representative (v < q).
    Elem check(Elem v) const;

    /// dst[i] += src[i]
    void add_in_place(std::span<Elem> dst, std::span<const Elem> src) const;
    /// dst[i] += c * src[i]
    void axpy(std::span<Elem> dst, Elem c, std::span<const Elem> src) const;
    void scale_in_place(std::span<Elem> dst, Elem c) const;

    bool operator==(const Field& o) const { return q_ == o.q_; }
    bool operator!=(const Field& o) const { return q_ != o.q_; }

private:
    Elem poly_mul(Elem a, Elem b) const;
    Elem poly_pow(Elem a, std::uint64_t e) const;
    void choose_reduction_poly();
    void build_tables();

    unsigned q_ = 0;
    unsigned p_ = 0;
    unsigned m_ = 0;
    std::vector<Elem> poly_;            // monic, degree m, constant term first
    std::vector<std::uint16_t> exp_;    // exp_[i] = g^i, i in [0, q-1)
    std::vector<std::uint16_t> log_;    // log_[exp_[i]] = i
};

} // namespace slfr
