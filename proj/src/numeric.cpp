#include "stackyfan/numeric.hpp"

#include "stackyfan/error.hpp"

#include <string>

namespace stackyfan {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotFullRank: return "NotFullRank";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::NotPrequantizable: return "NotPrequantizable";
    case ErrorCode::NotOrbifold: return "NotOrbifold";
    case ErrorCode::EmptySlice: return "EmptySlice";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::RankMismatch: return "RankMismatch";
  }
  return "Unknown";
}

Rat dot(const RatVec& a, const IntVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

bool is_integral(const Rat& x) { return x.get_den() == 1; }

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

IntVec to_int(const RatVec& v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i])) throw Error(ErrorCode::InvalidInput, "non-integral entry " + to_string(v[i]));
    out[i] = v[i].get_num();
  }
  return out;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Rat ratio(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

Int lcm_denominators(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  return l;
}

IntVec primitive_part(const IntVec& v) {
  Int g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVec primitive_direction(const RatVec& v) {
  Int l = lcm_denominators(v);
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * l;
    out[i] = s.get_num();
  }
  return primitive_part(out);
}

Rat parse_rat(std::string_view s) {
  std::string str(s);
  while (!str.empty() && str.front() == ' ') str.erase(str.begin());
  while (!str.empty() && str.back() == ' ') str.pop_back();
  if (!str.empty() && str.front() == '+') str.erase(str.begin());
  Rat r;
  if (str.empty() || r.set_str(str, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorCode::InvalidInput, "cannot parse rational '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

Int parse_int(std::string_view s) {
  Rat r = parse_rat(s);
  if (!is_integral(r)) throw Error(ErrorCode::InvalidInput, "expected an integer, got '" + std::string(s) + "'");
  return r.get_num();
}

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

template <typename V>
static std::ostream& print_vec(std::ostream& os, const V& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const IntVec& v) { return print_vec(os, v); }
std::ostream& operator<<(std::ostream& os, const RatVec& v) { return print_vec(os, v); }

}  // namespace stackyfan
