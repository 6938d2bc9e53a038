#include "pjlab/space.hpp"

#include <cstdlib>
#include <string>

namespace pjlab {

namespace {

constexpr std::uint64_t kDefaultEnumCap = std::uint64_t(1) << 20;

std::uint64_t env_enum_cap() {
  if (const char* v = std::getenv("PJLAB_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && parsed > 0) return parsed;
  }
  return kDefaultEnumCap;
}

std::uint64_t g_enum_cap = 0;  // 0 -> read env on first use

}  // namespace

std::uint64_t enum_cap() {
  if (g_enum_cap == 0) g_enum_cap = env_enum_cap();
  return g_enum_cap;
}

void set_enum_cap(std::uint64_t cap) { g_enum_cap = cap == 0 ? env_enum_cap() : cap; }

PartialPoint compose(const PartialPoint& a, const PartialPoint& b) {
  require((a.support & b.support) == 0, Errc::SupportMismatch,
          "composition needs disjoint supports");
  PartialPoint out;
  out.support = a.support | b.support;
  auto ca = mask_coords(a.support);
  auto cb = mask_coords(b.support);
  std::size_t ia = 0, ib = 0;
  while (ia < ca.size() || ib < cb.size()) {
    if (ib >= cb.size() || (ia < ca.size() && ca[ia] < cb[ib]))
      out.sym.push_back(a.sym[ia++]);
    else
      out.sym.push_back(b.sym[ib++]);
  }
  return out;
}

SubGrid::SubGrid(const std::vector<int>& space_radices, Mask S) {
  coords = mask_coords(S);
  radix.reserve(coords.size());
  for (int c : coords) radix.push_back(space_radices[c]);
  strides.assign(coords.size(), 1);
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (i + 1 < coords.size()) strides[i] = strides[i + 1] * radix[i + 1];
  }
  count = 1;
  for (int r : radix) count *= static_cast<std::uint64_t>(r);
}

std::uint64_t SubGrid::index(std::span<const std::uint8_t> symbols) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < strides.size(); ++i)
    idx += strides[i] * static_cast<std::uint64_t>(symbols[i]);
  return idx;
}

void SubGrid::decode(std::uint64_t idx, std::vector<std::uint8_t>& out) const {
  out.resize(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    out[i] = static_cast<std::uint8_t>((idx / strides[i]) % static_cast<std::uint64_t>(radix[i]));
}

std::vector<std::uint8_t> SubGrid::decode(std::uint64_t idx) const {
  std::vector<std::uint8_t> out;
  decode(idx, out);
  return out;
}

template <class R>
typename ProductSpace<R>::Ptr ProductSpace<R>::make(std::vector<std::vector<R>> coords) {
  require(!coords.empty(), Errc::EmptySpace, "need at least one coordinate");
  require(coords.size() <= 30, Errc::DomainError, "coordinate count limited to 30");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& w = coords[i];
    require(w.size() >= 2, Errc::EmptySpace,
            "coordinate " + std::to_string(i + 1) + " needs an alphabet of size >= 2");
    require(w.size() <= 255, Errc::DomainError, "alphabet size limited to 255");
    R sum = 0;
    for (const R& x : w) {
      require(x > 0, Errc::NonPositiveWeight,
              "coordinate " + std::to_string(i + 1) + " has a weight <= 0");
      sum += x;
    }
    if constexpr (kExact<R>) {
      require(sum == 1, Errc::WeightsNotNormalized,
              "coordinate " + std::to_string(i + 1) + " weights sum to " + rat_string(sum));
    } else {
      require(abs_val(sum - 1.0) <= 1e-12, Errc::WeightsNotNormalized,
              "coordinate " + std::to_string(i + 1) + " weights sum to " + std::to_string(sum));
    }
  }

  auto sp = std::shared_ptr<ProductSpace<R>>(new ProductSpace<R>());
  sp->coords_ = std::move(coords);

  unsigned __int128 total = 1;
  for (const auto& w : sp->coords_) total *= w.size();
  sp->indexable_ = total <= (std::uint64_t(1) << 62);
  sp->outcome_count_ = sp->indexable_ ? static_cast<std::uint64_t>(total) : 0;
  if (sp->indexable_) sp->grid_ = SubGrid(sp->radices(), full_mask(sp->n()));

  if constexpr (kExact<R>) {
    sp->wnum_.resize(sp->coords_.size());
    sp->wden_.resize(sp->coords_.size());
    for (std::size_t i = 0; i < sp->coords_.size(); ++i) {
      Int den = 1;
      for (const R& w : sp->coords_[i]) den = boost::multiprecision::lcm(den, Int(denominator(w)));
      sp->wden_[i] = den;
      for (const R& w : sp->coords_[i]) sp->wnum_[i].push_back(Int(numerator(w)) * (den / Int(denominator(w))));
      sp->total_den_ *= den;
    }
  }
  return sp;
}

template <class R>
typename ProductSpace<R>::Ptr ProductSpace<R>::pbiased(int n, const R& p) {
  require(n >= 1, Errc::EmptySpace, "need n >= 1");
  std::vector<std::vector<R>> coords(n, std::vector<R>{R(1) - p, p});
  return make(std::move(coords));
}

template <class R>
std::vector<int> ProductSpace<R>::radices() const {
  std::vector<int> out;
  out.reserve(coords_.size());
  for (const auto& w : coords_) out.push_back(static_cast<int>(w.size()));
  return out;
}

template <class R>
bool ProductSpace<R>::is_binary() const {
  for (const auto& w : coords_)
    if (w.size() != 2) return false;
  return true;
}

template <class R>
std::optional<R> ProductSpace<R>::common_bias() const {
  if (!is_binary()) return std::nullopt;
  R p = coords_[0][1];
  for (const auto& w : coords_)
    if (!(w[1] == p)) return std::nullopt;
  return p;
}

template <class R>
std::uint64_t ProductSpace<R>::index_of(const Point& x) const {
  require(x.size() == coords_.size(), Errc::SupportMismatch, "point has wrong arity");
  for (std::size_t i = 0; i < x.size(); ++i)
    require(x[i] < coords_[i].size(), Errc::SymbolOutOfRange,
            "symbol out of range at coordinate " + std::to_string(i + 1));
  return grid_.index(x);
}

template <class R>
R ProductSpace<R>::measure(const PartialPoint& y) const {
  R out = 1;
  auto cs = mask_coords(y.support);
  require(cs.empty() || cs.back() < n(), Errc::SupportMismatch, "support exceeds coordinate count");
  require(cs.size() == y.sym.size(), Errc::SupportMismatch, "support/value size mismatch");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    require(y.sym[i] < coords_[cs[i]].size(), Errc::SymbolOutOfRange,
            "symbol out of range at coordinate " + std::to_string(cs[i] + 1));
    out *= coords_[cs[i]][y.sym[i]];
  }
  return out;
}

template <class R>
R ProductSpace<R>::point_measure(std::uint64_t idx) const {
  R out = 1;
  for (std::size_t i = 0; i < coords_.size(); ++i) out *= coords_[i][grid_.symbol(idx, i)];
  return out;
}

template <class R>
R ProductSpace<R>::sub_measure(const SubGrid& g, std::uint64_t idx) const {
  R out = 1;
  for (std::size_t pos = 0; pos < g.coords.size(); ++pos)
    out *= coords_[g.coords[pos]][g.symbol(idx, pos)];
  return out;
}

template <class R>
void ProductSpace<R>::require_enumerable(std::uint64_t needed_points) const {
  require(indexable_ && needed_points <= enum_cap(), Errc::EnumerationCapExceeded,
          std::to_string(needed_points) + " points exceed the enumeration cap " +
              std::to_string(enum_cap()));
}

template <class R>
const std::vector<Int>& ProductSpace<R>::point_numerators() const {
  if constexpr (!kExact<R>) {
    fail(Errc::DomainError, "point numerators exist only in exact mode");
  } else {
    std::call_once(point_num_once_, [this] {
      require_enumerable(outcome_count_);
      point_num_.assign(outcome_count_, Int(1));
      std::uint64_t stride = outcome_count_;
      for (int i = 0; i < n(); ++i) {
        std::uint64_t radix = coords_[i].size();
        stride /= radix;
        for (std::uint64_t idx = 0; idx < outcome_count_; ++idx)
          point_num_[idx] *= wnum_[i][static_cast<int>((idx / stride) % radix)];
      }
    });
    return point_num_;
  }
}

template <class R>
typename ProductSpace<R>::Ptr ProductSpace<R>::subspace(Mask S) const {
  std::vector<std::vector<R>> cs;
  for (int c : mask_coords(S)) {
    require(c < n(), Errc::SupportMismatch, "subspace mask exceeds coordinate count");
    cs.push_back(coords_[c]);
  }
  return make(std::move(cs));
}

template <class R>
std::vector<std::pair<PartialPoint, R>> enumerate_points(const ProductSpace<R>& sp, Mask S) {
  SubGrid g = sp.subgrid(S);
  sp.require_enumerable(g.count);
  std::vector<std::pair<PartialPoint, R>> out;
  out.reserve(g.count);
  for (std::uint64_t idx = 0; idx < g.count; ++idx) {
    PartialPoint pp;
    pp.support = S;
    g.decode(idx, pp.sym);
    R mu = sp.sub_measure(g, idx);
    out.emplace_back(std::move(pp), std::move(mu));
  }
  return out;
}

template <class R>
std::vector<Point> sample_points(const ProductSpace<R>& sp, std::uint64_t seed,
                                 std::uint64_t count) {
  require(count >= 1, Errc::DomainError, "need count >= 1");
  // cumulative weights in doubles; draws walk the cumulative table
  std::vector<std::vector<double>> cum(sp.n());
  for (int i = 0; i < sp.n(); ++i) {
    double acc = 0;
    for (int a = 0; a < sp.m(i); ++a) {
      acc += to_double(sp.weight(i, a));
      cum[i].push_back(acc);
    }
    cum[i].back() = 1.0;
  }
  Rng rng(derive_seed(seed, 0x73616d706c65ULL));  // "sample"
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) {
    Point x(sp.n());
    for (int i = 0; i < sp.n(); ++i) {
      double u = rng.uniform01();
      int a = 0;
      while (u >= cum[i][a]) ++a;
      x[i] = static_cast<std::uint8_t>(a);
    }
    out.push_back(std::move(x));
  }
  return out;
}

template class ProductSpace<Rat>;
template class ProductSpace<double>;
template std::vector<std::pair<PartialPoint, Rat>> enumerate_points<Rat>(const ProductSpace<Rat>&,
                                                                         Mask);
template std::vector<std::pair<PartialPoint, double>> enumerate_points<double>(
    const ProductSpace<double>&, Mask);
template std::vector<Point> sample_points<Rat>(const ProductSpace<Rat>&, std::uint64_t,
                                               std::uint64_t);
template std::vector<Point> sample_points<double>(const ProductSpace<double>&, std::uint64_t,
                                                  std::uint64_t);

}  // namespace pjlab
