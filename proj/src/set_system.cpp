#include "subtraj/set_system.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "subtraj/frechet.hpp"

namespace subtraj {

IncidenceMatrix::IncidenceMatrix(std::vector<CandidatePair> rows,
                                 std::size_t ground_size, double threshold)
    : rows_(std::move(rows)),
      ground_size_(ground_size),
      words_((ground_size + 63) / 64),
      threshold_(threshold),
      bits_(rows_.size() * std::max<std::size_t>(words_, 1), 0) {
  if (!std::is_sorted(rows_.begin(), rows_.end()))
    std::sort(rows_.begin(), rows_.end());
}

void IncidenceMatrix::set_bit(std::size_t r, std::size_t z) {
  const std::size_t b = z - 1;
  bits_[r * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
}

bool IncidenceMatrix::query(std::size_t r, std::size_t z) const {
  if (r >= rows_.size() || z == 0 || z > ground_size_)
    throw std::out_of_range("incidence query out of range");
  const std::size_t b = z - 1;
  return (bits_[r * words_ + b / 64] >> (b % 64)) & 1u;
}

std::optional<std::size_t> IncidenceMatrix::row_of(
    const CandidatePair& pair) const {
  const auto it = std::lower_bound(rows_.begin(), rows_.end(), pair);
  if (it == rows_.end() || *it != pair) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

void IncidenceMatrix::enable_witnesses() {
  witnesses_.assign(rows_.size() * ground_size_, CandidatePair{0, 0});
}

void IncidenceMatrix::record_witness(std::size_t r, std::size_t z,
                                     CandidatePair w) {
  if (witnesses_.empty()) return;
  witnesses_[r * ground_size_ + (z - 1)] = w;
}

std::optional<CandidatePair> IncidenceMatrix::witness(std::size_t r,
                                                      std::size_t z) const {
  if (witnesses_.empty()) return std::nullopt;
  const CandidatePair w = witnesses_[r * ground_size_ + (z - 1)];
  if (w.i == 0) return std::nullopt;
  return w;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int k = 0; k < 4; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= std::uint32_t{b[k]} << (8 * k);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= std::uint64_t{b[k]} << (8 * k);
  return v;
}

double get_f64(std::istream& in) {
  const std::uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

constexpr char kMagic[4] = {'S', 'T', 'R', 'J'};

}  // namespace

void IncidenceMatrix::dump(std::ostream& out) const {
  out.write(kMagic, 4);
  put_u32(out, 1);  // version
  put_u64(out, ground_size_ + 1);  // m
  put_u64(out, rows_.size());
  put_f64(out, threshold_);
  for (const auto& r : rows_) {
    put_u32(out, static_cast<std::uint32_t>(r.i));
    put_u32(out, static_cast<std::uint32_t>(r.j));
  }
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t w = 0; w < words_; ++w) put_u64(out, bits_[r * words_ + w]);
}

IncidenceMatrix IncidenceMatrix::load(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("bad incidence file magic");
  const std::uint32_t version = get_u32(in);
  if (version != 1) throw std::runtime_error("unsupported incidence version");
  const std::uint64_t m = get_u64(in);
  const std::uint64_t row_count = get_u64(in);
  const double threshold = get_f64(in);
  std::vector<CandidatePair> rows(row_count);
  for (auto& r : rows) {
    r.i = get_u32(in);
    r.j = get_u32(in);
  }
  IncidenceMatrix mat(std::move(rows), m - 1, threshold);
  for (std::size_t r = 0; r < mat.row_count(); ++r)
    for (std::size_t w = 0; w < mat.words_; ++w)
      mat.bits_[r * mat.words_ + w] = get_u64(in);
  if (!in) throw std::runtime_error("truncated incidence file");
  return mat;
}

void IncidenceMatrix::dump_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  dump(out);
}

IncidenceMatrix IncidenceMatrix::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load(in);
}

ExactSubcurveOracle::ExactSubcurveOracle(const PolygonalCurve& p,
                                         const BreakpointSet& bps, double tol)
    : p_(p), bps_(bps), tol_(tol) {
  if (tol_ <= 0) tol_ = default_frechet_tol(p, p);
}

double ExactSubcurveOracle::distance(std::size_t i, std::size_t j,
                                     const PolygonalCurve& q) const {
  const PolygonalCurve sub = p_.subcurve(bps_.value(i), bps_.value(j));
  return compute_frechet(sub, q, tol_);
}

PolygonalCurve mu_simplification(const PolygonalCurve& p,
                                 const BreakpointSet& bps, std::size_t i,
                                 std::size_t j, std::size_t ell, double tol) {
  const PolygonalCurve sub = p.subcurve(bps.value(i), bps.value(j));
  return ell_simplification(sub, ell, tol);
}

namespace {

std::vector<CandidatePair> all_pairs(std::size_t m) {
  std::vector<CandidatePair> rows;
  rows.reserve(m * (m - 1) / 2);
  for (std::size_t i = 1; i < m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) rows.push_back({i, j});
  return rows;
}

double auto_mu_tol(double delta, const BuildOptions& opts) {
  if (opts.mu_tol > 0) return opts.mu_tol;
  return std::max(1e-9, 1e-6 * delta);
}

}  // namespace

IncidenceMatrix build_r0(const PolygonalCurve& p, const BreakpointSet& bps,
                         double delta, std::size_t ell,
                         const BuildOptions& opts) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  const std::size_t m = bps.count();
  const double mu_tol = auto_mu_tol(delta, opts);
  IncidenceMatrix mat(all_pairs(m), m - 1, 3.0 * delta);
  if (opts.record_witnesses) mat.enable_witnesses();
  const BreakpointedCurve bc(p, bps);
  parallel_for(mat.row_count(), [&](std::size_t r) {
    const CandidatePair pair = mat.row_pair(r);
    const PolygonalCurve mu =
        mu_simplification(p, bps, pair.i, pair.j, ell, mu_tol);
    const std::vector<std::size_t> reach =
        max_reachable_breakpoints(mu, bc, 3.0 * delta);
    for (std::size_t ip = 1; ip <= m; ++ip) {
      const std::size_t jp = reach[ip - 1];
      for (std::size_t z = ip; z + 1 <= jp; ++z) {
        mat.set_bit(r, z);
        mat.record_witness(r, z, CandidatePair{ip, jp});
      }
    }
  });
  return mat;
}

IncidenceMatrix build_r1(const PolygonalCurve& p, const BreakpointSet& bps,
                         double delta, std::size_t ell,
                         const SubcurveDistanceOracle& oracle,
                         const BuildOptions& opts) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  const double c = oracle.constant();
  if (!(c >= 1.0)) throw std::invalid_argument("oracle constant must be >= 1");
  const std::size_t m = bps.count();
  const double mu_tol = auto_mu_tol(delta, opts);
  const double radius = 3.0 * c * delta;
  IncidenceMatrix mat(all_pairs(m), m - 1, radius);
  if (opts.record_witnesses) mat.enable_witnesses();
  parallel_for(mat.row_count(), [&](std::size_t r) {
    const CandidatePair pair = mat.row_pair(r);
    const PolygonalCurve mu =
        mu_simplification(p, bps, pair.i, pair.j, ell, mu_tol);
    for (std::size_t ip = 1; ip < m; ++ip) {
      for (std::size_t jp = ip + 1; jp <= m; ++jp) {
        if (oracle.distance(ip, jp, mu) > radius + geom_epsilon()) continue;
        for (std::size_t z = ip; z + 1 <= jp; ++z) {
          if (!mat.query(r, z)) {
            mat.set_bit(r, z);
            mat.record_witness(r, z, CandidatePair{ip, jp});
          }
        }
      }
    }
  });
  return mat;
}

}  // namespace subtraj
