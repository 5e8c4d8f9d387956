#include "bagcq/xform/trips.hpp"

#include "bagcq/bageval/eval.hpp"
#include "bagcq/relcore/classify.hpp"

namespace bagcq {

namespace {

void require_good(const Structure& d) {
  if (!classify_structure(d).good) throw PreconditionError("trips need a good structure");
}

}  // namespace

const char* to_string(TripKind kind) {
  switch (kind) {
    case TripKind::AllVenus: return "all-venus";
    case TripKind::OneAway: return "one-away";
    case TripKind::TwoPlusAway: return "two-plus-away";
  }
  return "?";
}

TripClass classify_trip(const std::vector<VertexId>& images, const Structure& d) {
  VertexId venus = d.constant(kVenus);
  TripClass cls;
  std::size_t away = 0;
  for (auto p : images) {
    if (p == venus) continue;
    ++away;
    cls.destinations.insert(p);
  }
  cls.kind = away == 0 ? TripKind::AllVenus : away == 1 ? TripKind::OneAway : TripKind::TwoPlusAway;
  return cls;
}

void for_each_trip(std::size_t j, const Structure& d,
                   const std::function<bool(const std::vector<VertexId>&)>& visit) {
  require_good(d);
  const auto ps = planets(d);
  const std::string reach(kReach);
  std::vector<VertexId> images;
  images.reserve(j);
  std::function<bool()> extend = [&]() -> bool {
    if (images.size() == j) return visit(images);
    for (auto p : ps) {
      bool ok = true;
      for (auto q : images)
        if (!d.holds(reach, {q, p}) || !d.holds(reach, {p, q})) {
          ok = false;
          break;
        }
      if (!ok) continue;
      images.push_back(p);
      bool go_on = extend();
      images.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  extend();
}

std::vector<Trip> enumerate_trips(std::size_t j, const Structure& d, std::size_t cap) {
  std::vector<Trip> out;
  for_each_trip(j, d, [&](const std::vector<VertexId>& images) {
    if (out.size() == cap)
      throw CapExceeded("more than " + std::to_string(cap) + " trips of arity " + std::to_string(j));
    out.push_back({images, classify_trip(images, d)});
    return true;
  });
  return out;
}

TripEvaluator::TripEvaluator(const UCQ& q, const Structure& d) : q_(q), d_(d) {
  if (!is_pleasant(q)) throw PreconditionError("trip decomposition needs a pleasant query");
}

const Count& TripEvaluator::factor(std::size_t j, VertexId p) {
  auto key = std::make_pair(j, p);
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(key, count_seen_from(q_[j], p, d_)).first;
  return it->second;
}

Count TripEvaluator::value(const std::vector<VertexId>& images) {
  if (images.size() != q_.size()) throw PreconditionError("trip arity differs from disjunct count");
  Count product = 1;
  for (std::size_t j = 0; j < images.size() && product != 0; ++j) product *= factor(j, images[j]);
  return product;
}

TripBreakdown count_by_trips(const UCQ& q, const Structure& d, std::size_t cap) {
  TripEvaluator eval(q, d);
  TripBreakdown out;
  out.trips = enumerate_trips(q.size(), d, cap);
  out.total = 0;
  for (const auto& t : out.trips) {
    out.per_trip.push_back(eval.value(t.images));
    out.total += out.per_trip.back();
  }
  return out;
}

}  // namespace bagcq
