#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>

#include "seisdetect/bench.hpp"
#include "seisdetect/error.hpp"
#include "seisdetect/seeds.hpp"

namespace seisdetect {
namespace {

constexpr double kFloorSlack = 1e-9;

enum class Split { Train, Validation, Test };

// Assigns each (sorted, unique) key to a split after a seeded shuffle.
std::map<std::string, Split> assign(const std::vector<std::string>& keys, const SplitSpec& spec, std::uint64_t seed) {
  std::vector<std::string> order = keys;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto counts = split_counts(order.size(), spec);
  std::map<std::string, Split> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Split s = i < counts.train ? Split::Train
                    : i < counts.train + counts.validation ? Split::Validation
                                                          : Split::Test;
    out.emplace(order[i], s);
  }
  return out;
}

}  // namespace

void SplitSpec::validate() const {
  if (!(train > 0 && validation > 0 && test > 0)) {
    throw Error(ErrorCode::InvalidConfig, "split fractions must all be positive");
  }
  if (std::fabs(train + validation + test - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidConfig, "split fractions must sum to 1");
  }
}

SplitCounts split_counts(std::size_t n, const SplitSpec& spec) {
  const auto nd = static_cast<double>(n);
  SplitCounts c;
  c.train = static_cast<std::size_t>(std::floor(nd * spec.train + kFloorSlack));
  c.validation = static_cast<std::size_t>(std::floor(nd * spec.validation + kFloorSlack));
  c.train = std::min(c.train, n);
  c.validation = std::min(c.validation, n - c.train);
  c.test = n - c.train - c.validation;
  return c;
}

Partition partition_by_event(const std::vector<WaveformRecord>& records, const SplitSpec& spec) {
  spec.validate();
  std::set<std::string> event_ids;
  std::set<std::string> noise_ids;
  for (const auto& r : records) {
    if (r.label == Label::Event) {
      if (!r.event_id) throw Error(ErrorCode::InvalidConfig, "event record " + r.trace_id + " has no event_id");
      event_ids.insert(*r.event_id);
    } else {
      noise_ids.insert(r.trace_id);
    }
  }
  const std::vector<std::string> events(event_ids.begin(), event_ids.end());
  const auto counts = split_counts(events.size(), spec);
  if (counts.train == 0 || counts.validation == 0 || counts.test == 0) {
    throw Error(ErrorCode::TooFewEvents, std::to_string(events.size()) +
                                             " event(s) cannot fill train/validation/test at the requested fractions");
  }
  const auto event_split = assign(events, spec, derive_seed(spec.seed, "split.events"));
  const auto noise_split =
      assign(std::vector<std::string>(noise_ids.begin(), noise_ids.end()), spec, derive_seed(spec.seed, "split.noise"));

  Partition p;
  for (const auto& r : records) {
    const Split s = r.label == Label::Event ? event_split.at(*r.event_id) : noise_split.at(r.trace_id);
    (s == Split::Train ? p.train : s == Split::Validation ? p.validation : p.test).push_back(r);
  }
  return p;
}

}  // namespace seisdetect
