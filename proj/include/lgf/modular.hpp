#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lgf/bigint.hpp"

// Word-size prime field arithmetic, dense echelon forms, Chinese remaindering
// and rational reconstruction: the machinery behind exact nullspace solves.
namespace lgf::modular {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Arithmetic modulo a prime p < 2^31 with Barrett reduction.
class Field {
 public:
  explicit Field(u32 p);

  u32 prime() const { return p_; }
  u32 reduce(u64 x) const {
    u64 q = static_cast<u64>((static_cast<unsigned __int128>(x) * m_) >> 64);
    u64 r = x - q * p_;
    return static_cast<u32>(r >= p_ ? r - p_ : r);
  }
  u32 mul(u32 a, u32 b) const { return reduce(static_cast<u64>(a) * b); }
  u32 add(u32 a, u32 b) const {
    u32 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
  u32 inv(u32 a) const;
  u32 from(const Int& x) const;
  u32 from(long x) const;
  // Returns nullopt when the denominator vanishes mod p.
  std::optional<u32> from(const Rat& q) const;

 private:
  u32 p_;
  u64 m_;
};

// i-th prime below 2^31, descending, deterministic.
u32 prime(std::size_t i);

using Row = std::vector<u32>;

struct Echelon {
  std::vector<Row> rows;    // reduced row echelon form, `rank` rows
  std::vector<int> pivots;  // pivot column of each row
  int ncols = 0;
  int rank() const { return static_cast<int>(pivots.size()); }
};

// Reduced row echelon form of a dense matrix over the field. Rows are consumed.
Echelon rref(std::vector<Row> rows, int ncols, const Field& f);

// Canonical nullspace basis: one vector per free column c, with a 1 at c,
// zeros at the other free columns.
std::vector<Row> nullspace(const Echelon& e, const Field& f);

// Wang's rational reconstruction of a mod m with |num|, den <= sqrt(m/2).
std::optional<Rat> rational_reconstruct(const Int& a, const Int& m);

// Incremental CRT: combines (r1 mod m1) with (r2 mod p).
Int crt_combine(const Int& r1, const Int& m1, u32 r2, u32 p);

struct NullspaceOptions {
  int max_primes = 400;
  // Consecutive primes that must agree with a reconstruction before it is
  // submitted to exact verification.
  int stable_primes = 1;
};

// Exact rational nullspace of an integer matrix, computed modulo several
// primes, reconstructed, and verified exactly against every row. Bad primes
// (rank drop or a different pivot pattern) are discarded.
// Columns are ordered as given; the basis is the canonical RREF basis.
std::vector<std::vector<Rat>> exact_nullspace(const std::vector<std::vector<Int>>& matrix,
                                              int ncols, const NullspaceOptions& opt = {});

// Multimodular nullspace for matrices too large to hold exactly: rows_mod
// produces the reduced rows for a given field, verify accepts or rejects a
// stable reconstruction. Same bad-prime handling as exact_nullspace.
std::vector<std::vector<Rat>> multimodular_nullspace(
    const std::function<std::vector<Row>(const Field&)>& rows_mod, int ncols,
    const std::function<bool(const std::vector<std::vector<Rat>>&)>& verify, const NullspaceOptions& opt = {});

// Nullity of the matrix modulo one prime (a fast upper bound on the rational nullity).
int modular_nullity(const std::vector<std::vector<Int>>& matrix, int ncols, std::size_t prime_index = 0);

// Scales a rational vector to a primitive integer vector (content 1).
std::vector<Int> primitive_integer_vector(const std::vector<Rat>& v);

}  // namespace lgf::modular
