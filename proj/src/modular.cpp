#include "lgf/modular.hpp"

#include <algorithm>
#include <mutex>

#include "lgf/error.hpp"

namespace lgf::modular {

Field::Field(u32 p) : p_(p) {
  // floor(2^64 / p); p is odd so 2^64 is never a multiple.
  m_ = static_cast<u64>((static_cast<unsigned __int128>(1) << 64) / p);
}

u32 Field::inv(u32 a) const {
  if (a == 0) throw ValidationError("inverse of zero modulo prime");
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, newt = 1, r = p_, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<u32>(t);
}

u32 Field::from(const Int& x) const {
  return static_cast<u32>(mpz_fdiv_ui(x.get_mpz_t(), p_));
}

u32 Field::from(long x) const {
  long r = x % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<u32>(r);
}

std::optional<u32> Field::from(const Rat& q) const {
  u32 d = from(Int(q.get_den()));
  if (d == 0) return std::nullopt;
  return mul(from(Int(q.get_num())), inv(d));
}

namespace {

bool is_prime_u32(u32 n) {
  if (n < 2) return false;
  for (u32 small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto powmod = [n](u64 b, u64 e) {
    u64 r = 1;
    b %= n;
    while (e) {
      if (e & 1) r = r * b % n;
      b = b * b % n;
      e >>= 1;
    }
    return r;
  };
  for (u64 a : {2ull, 7ull, 61ull}) {
    if (a % n == 0) continue;
    u64 x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

u32 prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<u32> cache;
  std::lock_guard<std::mutex> lock(mu);
  u32 candidate = cache.empty() ? (1u << 31) - 1 : cache.back() - 2;
  while (cache.size() <= i) {
    while (!is_prime_u32(candidate)) candidate -= 2;
    cache.push_back(candidate);
    candidate -= 2;
  }
  return cache[i];
}

Echelon rref(std::vector<Row> rows, int ncols, const Field& f) {
  Echelon e;
  e.ncols = ncols;
  const std::size_t nrows = rows.size();
  std::size_t rank = 0;
  for (int col = 0; col < ncols && rank < nrows; ++col) {
    std::size_t pivot = rank;
    while (pivot < nrows && rows[pivot][col] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(rows[rank], rows[pivot]);
    Row& pr = rows[rank];
    const u32 inv = f.inv(pr[col]);
    for (int k = col; k < ncols; ++k) pr[k] = f.mul(pr[k], inv);
    for (std::size_t r = rank + 1; r < nrows; ++r) {
      Row& row = rows[r];
      const u32 factor = row[col];
      if (factor == 0) continue;
      const u32 negf = f.neg(factor);
      for (int k = col; k < ncols; ++k) {
        if (pr[k]) row[k] = f.reduce(row[k] + static_cast<u64>(negf) * pr[k]);
      }
    }
    e.pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  // Back substitution to reduced form.
  for (std::size_t i = rank; i-- > 0;) {
    const int col = e.pivots[i];
    for (std::size_t r = 0; r < i; ++r) {
      const u32 factor = rows[r][col];
      if (factor == 0) continue;
      const u32 negf = f.neg(factor);
      for (int k = col; k < ncols; ++k) {
        if (rows[i][k]) rows[r][k] = f.reduce(rows[r][k] + static_cast<u64>(negf) * rows[i][k]);
      }
    }
  }
  e.rows = std::move(rows);
  return e;
}

std::vector<Row> nullspace(const Echelon& e, const Field& f) {
  std::vector<bool> is_pivot(e.ncols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<Row> basis;
  for (int c = 0; c < e.ncols; ++c) {
    if (is_pivot[c]) continue;
    Row v(e.ncols, 0);
    v[c] = 1;
    for (int i = 0; i < e.rank(); ++i) v[e.pivots[i]] = f.neg(e.rows[i][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Rat> rational_reconstruct(const Int& a0, const Int& m) {
  Int a = a0 % m;
  if (a < 0) a += m;
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
  Int r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Int t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  return make_rat(r1, t1);
}

Int crt_combine(const Int& r1, const Int& m1, u32 r2, u32 p) {
  // x = r1 + m1 * t, t = (r2 - r1) / m1 mod p
  Field f(p);
  u32 a = f.from(r1);
  u32 minv = f.inv(f.from(m1));
  u32 t = f.mul(f.sub(r2, a), minv);
  return r1 + m1 * static_cast<unsigned long>(t);
}

namespace {

std::vector<Row> reduce_matrix(const std::vector<std::vector<Int>>& matrix, int ncols, const Field& f) {
  std::vector<Row> rows(matrix.size(), Row(ncols));
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (int j = 0; j < ncols; ++j) rows[i][j] = f.from(matrix[i][j]);
  return rows;
}

bool verify_exact(const std::vector<std::vector<Int>>& matrix, const std::vector<Rat>& v) {
  std::vector<Int> iv = primitive_integer_vector(v);
  Int acc;
  for (const auto& row : matrix) {
    acc = 0;
    for (std::size_t j = 0; j < iv.size(); ++j)
      if (iv[j] != 0 && row[j] != 0) acc += row[j] * iv[j];
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace

int modular_nullity(const std::vector<std::vector<Int>>& matrix, int ncols, std::size_t prime_index) {
  Field f(prime(prime_index));
  Echelon e = rref(reduce_matrix(matrix, ncols, f), ncols, f);
  return ncols - e.rank();
}

std::vector<std::vector<Rat>> multimodular_nullspace(
    const std::function<std::vector<Row>(const Field&)>& rows_mod, int ncols,
    const std::function<bool(const std::vector<std::vector<Rat>>&)>& verify, const NullspaceOptions& opt) {
  std::vector<int> best_pivots;
  int best_rank = -1;
  std::vector<std::vector<Int>> residues;  // per basis vector, per column: CRT value
  Int modulus = 1;
  std::vector<std::vector<Rat>> last;
  int stable = 0;

  for (int k = 0; k < opt.max_primes; ++k) {
    Field f(prime(static_cast<std::size_t>(k)));
    Echelon e = rref(rows_mod(f), ncols, f);
    const int r = e.rank();
    if (r < best_rank) continue;  // rank collapsed: bad prime
    if (r == best_rank && e.pivots != best_pivots) {
      if (std::lexicographical_compare(best_pivots.begin(), best_pivots.end(), e.pivots.begin(),
                                       e.pivots.end()))
        continue;  // later pivots than seen before: bad prime
    }
    if (r > best_rank || e.pivots != best_pivots) {
      // Everything gathered so far came from bad primes.
      best_rank = r;
      best_pivots = e.pivots;
      residues.clear();
      modulus = 1;
      last.clear();
      stable = 0;
    }
    std::vector<Row> basis = nullspace(e, f);
    if (basis.empty()) return {};
    if (residues.empty()) {
      residues.assign(basis.size(), std::vector<Int>(ncols));
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (int j = 0; j < ncols; ++j) residues[b][j] = basis[b][j];
      modulus = f.prime();
    } else {
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (int j = 0; j < ncols; ++j)
          if (residues[b][j] != 0 || basis[b][j] != 0)
            residues[b][j] = crt_combine(residues[b][j], modulus, basis[b][j], f.prime());
      modulus *= f.prime();
    }

    std::vector<std::vector<Rat>> recon(basis.size(), std::vector<Rat>(ncols));
    bool ok = true;
    for (std::size_t b = 0; b < basis.size() && ok; ++b) {
      for (int j = 0; j < ncols; ++j) {
        if (residues[b][j] == 0) continue;
        auto q = rational_reconstruct(residues[b][j], modulus);
        if (!q) {
          ok = false;
          break;
        }
        recon[b][j] = *q;
      }
    }
    if (!ok) {
      last.clear();
      stable = 0;
      continue;
    }
    if (recon == last) {
      ++stable;
    } else {
      last = recon;
      stable = 0;
      continue;
    }
    if (stable < opt.stable_primes) continue;
    if (verify(recon)) return recon;
    // A reconstruction that fails verification: the modular nullity
    // overstates the rational one only with bad primes or too few of them.
    last.clear();
    stable = 0;
  }
  throw ResourceError("exact nullspace: reconstruction did not stabilize within " +
                      std::to_string(opt.max_primes) + " primes");
}

std::vector<std::vector<Rat>> exact_nullspace(const std::vector<std::vector<Int>>& matrix, int ncols,
                                              const NullspaceOptions& opt) {
  auto rows_mod = [&](const Field& f) { return reduce_matrix(matrix, ncols, f); };
  auto verify = [&](const std::vector<std::vector<Rat>>& basis) {
    for (const auto& v : basis)
      if (!verify_exact(matrix, v)) return false;
    return true;
  };
  return multimodular_nullspace(rows_mod, ncols, verify, opt);
}

std::vector<Int> primitive_integer_vector(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& q : v) l = lcm(l, Int(q.get_den()));
  std::vector<Int> out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (l / v[i].get_den());
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace lgf::modular
