#include "slfr/field.hpp"

#include <array>
#include <string>

namespace slfr {

namespace {

constexpr unsigned kMaxOrder = 1u << 16;

unsigned smallest_prime_factor(unsigned n) {
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> fs;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Polynomials over GF(p) as coefficient vectors, constant term first,
// leading coefficient nonzero (except the zero polynomial, size 0).
void poly_trim(std::vector<unsigned>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

bool poly_divisible(std::vector<unsigned> num, const std::vector<unsigned>& div, unsigned p) {
    // div is monic
    while (num.size() >= div.size()) {
        unsigned lead = num.back();
        if (lead != 0) {
            std::size_t shift = num.size() - div.size();
            for (std::size_t j = 0; j < div.size(); ++j) {
                unsigned sub = (lead * div[j]) % p;
                num[shift + j] = (num[shift + j] + p - sub) % p;
            }
        }
        num.pop_back();
        poly_trim(num);
        if (num.empty()) return true;
    }
    return false;
}

bool poly_irreducible(const std::vector<unsigned>& f, unsigned p, unsigned m) {
    // exhaustive trial division by all monic polynomials of degree 1..m/2
    for (unsigned d = 1; 2 * d <= m; ++d) {
        unsigned count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        std::vector<unsigned> g(d + 1);
        g[d] = 1;
        for (unsigned low = 0; low < count; ++low) {
            unsigned x = low;
            for (unsigned i = 0; i < d; ++i) { g[i] = x % p; x /= p; }
            if (poly_divisible(f, g, p)) return false;
        }
    }
    return true;
}

} // namespace

Field::Field(unsigned q) : q_(q) {
    if (q < 2) throw NotPrimePower("field order must be at least 2, got " + std::to_string(q));
    if (q > kMaxOrder) throw Unsupported("field order " + std::to_string(q) + " exceeds 2^16");
    p_ = smallest_prime_factor(q);
    unsigned x = q;
    m_ = 0;
    while (x % p_ == 0) { x /= p_; ++m_; }
    if (x != 1)
        throw NotPrimePower(std::to_string(q) + " is not a prime power");
    if (m_ > 1) {
        choose_reduction_poly();
        build_tables();
    }
}

void Field::choose_reduction_poly() {
    // Lexicographically least monic irreducible of degree m: scan the
    // non-leading coefficients as a base-p integer, ascending.
    std::vector<unsigned> f(m_ + 1);
    f[m_] = 1;
    for (unsigned low = 0; low < q_; ++low) {
        unsigned x = low;
        for (unsigned i = 0; i < m_; ++i) { f[i] = x % p_; x /= p_; }
        if (poly_irreducible(f, p_, m_)) {
            poly_.assign(f.begin(), f.end());
            return;
        }
    }
    throw Error("no irreducible polynomial found for GF(" + std::to_string(q_) + ")");
}

Elem Field::poly_mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::array<unsigned, 33> prod{};
    std::array<unsigned, 17> da{}, db{};
    int na = 0, nb = 0;
    for (unsigned x = a; x; x /= p_) da[na++] = x % p_;
    for (unsigned x = b; x; x /= p_) db[nb++] = x % p_;
    for (int i = 0; i < na; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < nb; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    // reduce modulo the monic reduction polynomial
    for (int deg = na + nb - 2; deg >= static_cast<int>(m_); --deg) {
        unsigned c = prod[deg];
        if (!c) continue;
        prod[deg] = 0;
        for (unsigned j = 0; j < m_; ++j) {
            if (!poly_[j]) continue;
            unsigned idx = deg - m_ + j;
            prod[idx] = (prod[idx] + p_ - (c * poly_[j]) % p_) % p_;
        }
    }
    unsigned res = 0, mult = 1;
    for (unsigned i = 0; i < m_; ++i) { res += prod[i] * mult; mult *= p_; }
    return static_cast<Elem>(res);
}

Elem Field::poly_pow(Elem a, std::uint64_t e) const {
    Elem r = 1, base = a;
    while (e) {
        if (e & 1) r = poly_mul(r, base);
        base = poly_mul(base, base);
        e >>= 1;
    }
    return r;
}

void Field::build_tables() {
    const unsigned order = q_ - 1;
    const auto factors = prime_factors(order);
    unsigned gen = 0;
    for (unsigned c = 2; c < q_; ++c) {
        bool ok = true;
        for (unsigned f : factors) {
            if (poly_pow(static_cast<Elem>(c), order / f) == 1) { ok = false; break; }
        }
        if (ok) { gen = c; break; }
    }
    if (!gen) throw Error("no multiplicative generator found for GF(" + std::to_string(q_) + ")");
    exp_.assign(order, 0);
    log_.assign(q_, 0xFFFF);
    Elem cur = 1;
    for (unsigned i = 0; i < order; ++i) {
        exp_[i] = cur;
        log_[cur] = static_cast<std::uint16_t>(i);
        cur = poly_mul(cur, static_cast<Elem>(gen));
    }
}

Elem Field::check(Elem v) const {
    if (v >= q_)
        throw FieldMismatch("value " + std::to_string(v) + " is not an element of GF(" + std::to_string(q_) + ")");
    return v;
}

Elem Field::add(Elem a, Elem b) const {
    check(a); check(b);
    if (m_ == 1) return static_cast<Elem>((a + b) % p_);
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    unsigned res = 0, mult = 1, x = a, y = b;
    while (x || y) {
        res += ((x % p_) + (y % p_)) % p_ * mult;
        x /= p_; y /= p_; mult *= p_;
    }
    return static_cast<Elem>(res);
}

Elem Field::neg(Elem a) const {
    check(a);
    if (m_ == 1) return static_cast<Elem>(a == 0 ? 0 : p_ - a);
    if (p_ == 2) return a;
    unsigned res = 0, mult = 1, x = a;
    while (x) {
        unsigned d = x % p_;
        res += (d == 0 ? 0 : p_ - d) * mult;
        x /= p_; mult *= p_;
    }
    return static_cast<Elem>(res);
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
    check(a); check(b);
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<Elem>((static_cast<std::uint32_t>(a) * b) % p_);
    return exp_[(static_cast<unsigned>(log_[a]) + log_[b]) % (q_ - 1)];
}

Elem Field::inv(Elem a) const {
    check(a);
    if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
    if (m_ == 1) {
        // extended Euclid on (a, p)
        long long t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            long long qt = r / nr;
            long long tmp = t - qt * nt; t = nt; nt = tmp;
            tmp = r - qt * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<Elem>(t);
    }
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    check(a);
    Elem r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

void Field::add_in_place(std::span<Elem> dst, std::span<const Elem> src) const {
    if (dst.size() != src.size()) throw BadLength("symbol vector length mismatch");
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = add(dst[i], src[i]);
}

void Field::axpy(std::span<Elem> dst, Elem c, std::span<const Elem> src) const {
    if (dst.size() != src.size()) throw BadLength("symbol vector length mismatch");
    if (c == 0) return;
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = add(dst[i], mul(c, src[i]));
}

void Field::scale_in_place(std::span<Elem> dst, Elem c) const {
    for (auto& v : dst) v = mul(v, c);
}

} // namespace slfr
