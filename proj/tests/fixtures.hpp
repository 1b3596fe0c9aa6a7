#pragma once

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "vtrsim/corpus.hpp"

namespace fixtures {

inline vtrsim::Publication pub(std::string id, int year, std::int64_t citations,
                               std::vector<std::string> categories,
                               std::vector<vtrsim::Affiliation> affiliations) {
  vtrsim::Publication p;
  p.id = std::move(id);
  p.year = year;
  p.citations = citations;
  p.categories = std::move(categories);
  p.affiliations = std::move(affiliations);
  return p;
}

// One UDA "A" with one category "A1" in 2001; each university's publications
// carry the given citation counts.
inline vtrsim::Corpus single_uda(const std::vector<std::pair<std::string, double>>& staff,
                                 const std::vector<std::vector<std::int64_t>>& citations) {
  std::vector<vtrsim::StaffEntry> s;
  std::vector<vtrsim::Publication> pubs;
  int next = 0;
  for (std::size_t u = 0; u < staff.size(); ++u) {
    s.push_back({staff[u].first, "A", staff[u].second});
    for (auto c : citations[u]) {
      char id[16];
      std::snprintf(id, sizeof id, "P%04d", next++);
      pubs.push_back(pub(id, 2001, c, {"A1"}, {{staff[u].first, "A"}}));
    }
  }
  return vtrsim::Corpus(std::move(pubs), std::move(s), {{"A1", "A"}});
}

// A corpus whose single UDA has the given totals: `fte` split over two
// universities and `publications` articles spread over both.
inline vtrsim::Corpus totals_corpus(const std::string& uda, std::int64_t publications, double fte) {
  std::vector<vtrsim::StaffEntry> staff{{"U1", uda, fte / 2}, {"U2", uda, fte / 2}};
  std::vector<vtrsim::Publication> pubs;
  pubs.reserve(static_cast<std::size_t>(publications));
  const std::string cat = uda + "-C1";
  for (std::int64_t i = 0; i < publications; ++i) {
    pubs.push_back(pub("P" + std::to_string(i), 2001, i % 17, {cat},
                       {{i % 2 == 0 ? "U1" : "U2", uda}}));
  }
  return vtrsim::Corpus(std::move(pubs), std::move(staff), {{cat, uda}});
}

// Small random corpus: 3 universities, UDAs "A" (categories A1, A2) and "B"
// (B1), at most `max_pubs` publications over two years. Uses only raw 64-bit
// draws so the sequence is the same on every standard library.
inline vtrsim::Corpus random_tiny(std::uint64_t seed, int max_pubs = 20) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t n) { return static_cast<int>(rng() % n); };
  const std::vector<std::string> unis{"U1", "U2", "U3"};
  const std::vector<std::string> cats{"A1", "A2", "B1"};
  const std::vector<double> ftes{0.0, 3.0, 4.5, 5.0, 6.0, 8.5, 12.0, 14.0, 20.0};

  std::vector<vtrsim::StaffEntry> staff;
  for (const auto& uda : {"A", "B"}) {
    for (const auto& u : unis) {
      if (pick(100) < 85) staff.push_back({u, uda, ftes[pick(ftes.size())]});
    }
  }
  // Every university must appear in the staff table to be a valid affiliation.
  for (const auto& u : unis) {
    bool found = false;
    for (const auto& s : staff) found = found || s.university_id == u;
    if (!found) staff.push_back({u, "A", 6.0});
  }

  std::vector<vtrsim::Publication> pubs;
  const int n = 1 + pick(static_cast<std::uint64_t>(max_pubs));
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> pc{cats[pick(3)]};
    if (pick(4) == 0) {
      const auto& other = cats[pick(3)];
      if (other != pc.front()) pc.push_back(other);
    }
    std::vector<vtrsim::Affiliation> aff{{unis[pick(3)], pick(2) ? "A" : "B"}};
    if (pick(3) == 0) {
      const auto& other = unis[pick(3)];
      if (other != aff.front().university_id) aff.push_back({other, pick(2) ? "A" : "B"});
    }
    // Mostly small counts so that ties and zero-citation cells occur.
    const std::int64_t c = pick(5) == 0 ? 0 : pick(9);
    auto p = pub("P" + std::to_string(100 + i), 2001 + pick(2), c, pc, aff);
    if (pick(10) == 0) p.uda_override = pick(2) ? "A" : "B";
    pubs.push_back(std::move(p));
  }
  return vtrsim::Corpus(std::move(pubs), std::move(staff),
                        {{"A1", "A"}, {"A2", "A"}, {"B1", "B"}});
}

}  // namespace fixtures
