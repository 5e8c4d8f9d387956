#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "bagcq/common.hpp"
#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

enum class TripKind { AllVenus, OneAway, TwoPlusAway };

struct TripClass {
  TripKind kind = TripKind::AllVenus;
  /// Non-venus planets in the image of the trip.
  std::set<VertexId> destinations;

  friend bool operator==(const TripClass&, const TripClass&) = default;
};

/// Images of aliens x1..xj, in alien order.
struct Trip {
  std::vector<VertexId> images;
  TripClass cls;
};

const char* to_string(TripKind kind);

/// Tag by how many aliens left venus (not how many distinct planets).
TripClass classify_trip(const std::vector<VertexId>& images, const Structure& d);

/// All j-trips of a good structure in lexicographic order of images.
/// Throws CapExceeded once more than `cap` trips are found.
std::vector<Trip> enumerate_trips(std::size_t j, const Structure& d, std::size_t cap = 1000000);

/// Visits j-trips one by one; the callback returns false to stop.
void for_each_trip(std::size_t j, const Structure& d,
                   const std::function<bool(const std::vector<VertexId>&)>& visit);

/// Per-trip counts of cq(q)[h] as products of per-(disjunct, planet)
/// factors, each computed once.
class TripEvaluator {
 public:
  TripEvaluator(const UCQ& q, const Structure& d);

  /// Count of disjunct j (0-based) seen from planet p.
  const Count& factor(std::size_t j, VertexId p);
  Count value(const std::vector<VertexId>& images);

 private:
  const UCQ& q_;
  const Structure& d_;
  std::map<std::pair<std::size_t, VertexId>, Count> memo_;
};

struct TripBreakdown {
  std::vector<Trip> trips;
  std::vector<Count> per_trip;
  Count total;
};

/// Sum over trips of the per-trip products. `q` must be pleasant and `d`
/// good. Equals the count of cqize(q) on d.
TripBreakdown count_by_trips(const UCQ& q, const Structure& d, std::size_t cap = 1000000);

}  // namespace bagcq
