#include "idealscan/degeneration.hpp"

#include <algorithm>
#include <iterator>
#include <map>

namespace idealscan {

std::pair<int, int> direction(Degeneration g) {
  switch (g) {
    case Degeneration::One: return {1, 0};
    case Degeneration::Zero: return {0, -1};
    case Degeneration::Inf: return {-1, 1};
  }
  throw std::logic_error("unreachable");
}

DegenerationIndex DegenerationIndex::parse(const std::string& text) {
  DegenerationIndex out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    if (auto end = tok.find_last_not_of(" \t"); end != std::string::npos)
      tok.erase(end + 1);
    else
      tok.clear();
    if (tok == "1")
      out.entries.push_back(Degeneration::One);
    else if (tok == "0")
      out.entries.push_back(Degeneration::Zero);
    else if (tok == "inf")
      out.entries.push_back(Degeneration::Inf);
    else
      throw std::invalid_argument("bad degeneration symbol \"" + tok +
                                  "\" (expected 1, 0 or inf)");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.entries.empty()) throw std::invalid_argument("empty degeneration index");
  return out;
}

std::string DegenerationIndex::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ',';
    switch (entries[i]) {
      case Degeneration::One: out += '1'; break;
      case Degeneration::Zero: out += '0'; break;
      case Degeneration::Inf: out += "inf"; break;
    }
  }
  return out;
}

std::uint64_t DegenerationIndex::code() const {
  std::uint64_t c = 0;
  for (Degeneration g : entries) c = c * 3 + static_cast<std::uint64_t>(g);
  return c;
}

DegenerationIndex DegenerationIndex::from_code(std::uint64_t code, int n) {
  DegenerationIndex out;
  out.entries.assign(static_cast<std::size_t>(n), Degeneration::One);
  for (int i = n - 1; i >= 0; --i) {
    out.entries[static_cast<std::size_t>(i)] = static_cast<Degeneration>(code % 3);
    code /= 3;
  }
  return out;
}

DegenerationVector DegenerationVector::from(std::vector<BigInt> d) {
  DegenerationVector out;
  out.gcd_value = vector_gcd(d);
  if (out.gcd_value > 0) {
    out.d_primitive.reserve(d.size());
    for (const BigInt& x : d) out.d_primitive.push_back(x / out.gcd_value);
  }
  out.d = std::move(d);
  return out;
}

IntMatrix degeneration_matrix(const ReducedSystem& sys, const DegenerationIndex& I) {
  const std::size_t n = static_cast<std::size_t>(sys.base.n);
  if (I.entries.size() != n)
    throw std::invalid_argument("degeneration index length does not match n");
  IntMatrix out(sys.active_rows.size(), n);
  for (std::size_t j = 0; j < sys.active_rows.size(); ++j) {
    const auto& row = sys.active_rows[j];
    for (std::size_t nu = 0; nu < n; ++nu) {
      long long rp = row[2 * nu], rpp = row[2 * nu + 1];
      switch (I.entries[nu]) {
        case Degeneration::One: out.at(j, nu) = rpp; break;
        case Degeneration::Zero: out.at(j, nu) = rp; break;
        case Degeneration::Inf: out.at(j, nu) = -rp - rpp; break;
      }
    }
  }
  return out;
}

DegenerationVector degeneration_vector(const ReducedSystem& sys, const DegenerationIndex& I) {
  return DegenerationVector::from(maximal_minor_vector(degeneration_matrix(sys, I)));
}

namespace {

IndexClassification classify_from(const ReducedSystem& sys, const DegenerationIndex& I,
                                  const DegenerationVector& dv) {
  bool pos = false, neg = false, zero = false;
  for (const BigInt& x : dv.d) {
    if (x > 0) pos = true;
    else if (x < 0) neg = true;
    else zero = true;
  }
  if (pos && neg) return {Classification::Rejected, 0};
  if (pos && !zero) return {Classification::Certified, 1};
  if (neg && !zero) return {Classification::Certified, -1};
  if (pos || neg) return {Classification::Candidate, 0};
  // d = 0: a candidate only if the nonnegative kernel cone is nontrivial.
  if (!cone_generators(sys, I).empty()) return {Classification::Candidate, 0};
  return {Classification::Rejected, 0};
}

}  // namespace

IndexClassification classify_index(const ReducedSystem& sys, const DegenerationIndex& I) {
  return classify_from(sys, I, degeneration_vector(sys, I));
}

namespace {

// Masks of length n with exactly `zeros` zero positions, in lexicographic
// order of the zero-position sets.
void enumerate_masks(std::size_t n, std::size_t zeros, std::size_t start,
                     std::vector<int>& mask, std::vector<std::vector<int>>& out) {
  if (zeros == 0) {
    out.push_back(mask);
    return;
  }
  for (std::size_t i = start; i + zeros <= n; ++i) {
    mask[i] = 0;
    enumerate_masks(n, zeros - 1, i + 1, mask, out);
    mask[i] = 1;
  }
}

}  // namespace

std::vector<ConeFace> cone_faces(const ReducedSystem& sys, const DegenerationIndex& I) {
  const std::size_t n = static_cast<std::size_t>(sys.base.n);
  IntMatrix R = degeneration_matrix(sys, I);
  RowBasis rb = row_basis(R);
  const std::size_t r = rb.basis.rows();
  const std::size_t zeros = n - 1 - r;  // r <= n-1 always (R has n-1 rows)

  std::vector<std::vector<int>> masks;
  std::vector<int> mask(n, 1);
  enumerate_masks(n, zeros, 0, mask, masks);

  std::vector<ConeFace> faces;
  faces.reserve(masks.size());
  for (const auto& eps : masks) {
    IntMatrix sub(r, r + 1);
    std::size_t jo = 0;
    for (std::size_t nu = 0; nu < n; ++nu) {
      if (!eps[nu]) continue;
      for (std::size_t i = 0; i < r; ++i) sub.at(i, jo) = rb.basis.at(i, nu);
      ++jo;
    }
    ConeFace face;
    face.mask = eps;
    face.minor_vector = maximal_minor_vector(sub);
    bool pos = false, neg = false;
    for (const BigInt& x : face.minor_vector) {
      if (x > 0) pos = true;
      else if (x < 0) neg = true;
    }
    face.one_signed = (pos != neg);  // some nonzero entry, all of one sign
    faces.push_back(std::move(face));
  }
  return faces;
}

std::vector<ConeGenerator> cone_generators(const ReducedSystem& sys,
                                           const DegenerationIndex& I) {
  const std::size_t n = static_cast<std::size_t>(sys.base.n);
  std::vector<ConeGenerator> out;
  std::map<std::vector<BigInt>, bool> seen;
  for (const ConeFace& face : cone_faces(sys, I)) {
    if (!face.one_signed) continue;
    int sign = 0;
    for (const BigInt& x : face.minor_vector)
      if (x != 0) { sign = x > 0 ? 1 : -1; break; }
    std::vector<BigInt> coeffs(n, 0);
    std::size_t k = 0;
    for (std::size_t nu = 0; nu < n; ++nu) {
      if (!face.mask[nu]) continue;
      coeffs[nu] = sign * face.minor_vector[k++];
    }
    BigInt g = vector_gcd(coeffs);
    for (BigInt& c : coeffs) c /= g;  // primitive form; g > 0 since one_signed
    if (seen.emplace(coeffs, true).second)
      out.push_back(ConeGenerator{std::move(coeffs), face.mask});
  }
  return out;
}

namespace {

std::uint64_t pow3_checked(int n, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > cap / 3)
      throw CapExceeded("3^" + std::to_string(n) + " degeneration indices exceed the cap of " +
                        std::to_string(cap));
    total *= 3;
  }
  if (total > cap)
    throw CapExceeded("3^" + std::to_string(n) + " degeneration indices exceed the cap of " +
                      std::to_string(cap));
  return total;
}

ScanEntry evaluate_index(const ReducedSystem& sys, std::uint64_t code, int n) {
  ScanEntry e;
  e.index = DegenerationIndex::from_code(code, n);
  e.d = degeneration_vector(sys, e.index);
  e.cls = classify_from(sys, e.index, e.d);
  return e;
}

}  // namespace

ScanResult scan_serial(const ReducedSystem& sys, const ScanOptions& opts) {
  const int n = sys.base.n;
  const std::uint64_t total = pow3_checked(n, opts.max_indices);
  ScanResult res;
  res.total = total;
  for (std::uint64_t code = 0; code < total; ++code) {
    ScanEntry e = evaluate_index(sys, code, n);
    switch (e.cls.kind) {
      case Classification::Certified: res.certified.push_back(std::move(e)); break;
      case Classification::Candidate: res.candidates.push_back(std::move(e)); break;
      case Classification::Rejected: ++res.rejected; break;
    }
  }
  return res;
}

ScanResult scan(const ReducedSystem& sys, const ScanOptions& opts) {
  const int n = sys.base.n;
  const std::uint64_t total = pow3_checked(n, opts.max_indices);
  ScanResult res;
  res.total = total;
  std::uint64_t rejected = 0;
  std::vector<ScanEntry> certified, candidates;

#pragma omp parallel reduction(+ : rejected)
  {
    std::vector<ScanEntry> local_cert, local_cand;
#pragma omp for schedule(static)
    for (long long code = 0; code < static_cast<long long>(total); ++code) {
      ScanEntry e = evaluate_index(sys, static_cast<std::uint64_t>(code), n);
      switch (e.cls.kind) {
        case Classification::Certified: local_cert.push_back(std::move(e)); break;
        case Classification::Candidate: local_cand.push_back(std::move(e)); break;
        case Classification::Rejected: ++rejected; break;
      }
    }
#pragma omp critical
    {
      certified.insert(certified.end(), std::make_move_iterator(local_cert.begin()),
                       std::make_move_iterator(local_cert.end()));
      candidates.insert(candidates.end(), std::make_move_iterator(local_cand.begin()),
                        std::make_move_iterator(local_cand.end()));
    }
  }

  // Merge order depends on the schedule; the canonical sort removes that.
  auto by_code = [](const ScanEntry& a, const ScanEntry& b) {
    return a.index.code() < b.index.code();
  };
  std::sort(certified.begin(), certified.end(), by_code);
  std::sort(candidates.begin(), candidates.end(), by_code);
  res.certified = std::move(certified);
  res.candidates = std::move(candidates);
  res.rejected = rejected;
  return res;
}

}  // namespace idealscan
