/** Copyright 2026 The FPSPARQL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fpsparql/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "fpsparql/error.hpp"
#include "fpsparql/value.hpp"

namespace fpsparql {

FixtureKind parse_fixture_kind(std::string_view name) {
  if (name == "biblio") return FixtureKind::kBiblio;
  if (name == "events") return FixtureKind::kEvents;
  throw Error(ErrorKind::kUsage,
              "unknown fixture kind '" + std::string(name) + "' (expected biblio or events)");
}

std::string biblio_fixture() {
  return R"(# bibliographic network
paper1 @type paper .
paper1 @id "p1" .
paper1 @title "Exploring Process Views over Event Graphs" .
paper1 @year "2010" .
paper2 @type paper .
paper2 @id "p2" .
paper2 @title "Grouping Entities in Large Graphs" .
paper2 @year "2008" .
paper3 @type paper .
paper3 @id "p3" .
paper3 @title "Querying SQL Graphs" .
paper3 @year "2010" .
paper4 @type paper .
paper4 @id "p4" .
paper4 @title "Provenance of Collaborative Documents" .
paper4 @year "2009" .
author1 @type author .
author1 @name "author1" .
author2 @type author .
author2 @name "author2" .
CAiSE @type venue .
CAiSE @name "CAiSE" .
SIGMOD @type venue .
SIGMOD @name "SIGMOD" .
document1 @type document .
document1 @title "Draft of paper1" .
file1 @type ITEM .
paper1 publishedIn CAiSE .
paper3 publishedIn CAiSE .
paper2 publishedIn SIGMOD .
paper1 authoredBy author1 .
paper2 authoredBy author1 .
paper3 authoredBy author2 .
paper2 citedBy paper4 .
paper4 citedBy paper3 .
paper3 citedBy paper1 .
paper1 wasDerivedFrom document1 .
document1 wasDerivedFrom file1 .
)";
}

namespace {

struct Phase {
  const char* name;
  const char* first;  // inclusive
  const char* last;   // inclusive
};

constexpr std::array<Phase, 12> kPhases{{
    {"brainstorming09s2", "2009-07-19", "2009-08-08"},
    {"requirements09s2", "2009-08-09", "2009-08-29"},
    {"design09s2", "2009-08-30", "2009-09-19"},
    {"prototype09s2", "2009-09-20", "2009-10-10"},
    {"testing09s2", "2009-10-11", "2009-11-04"},
    {"delivery09s2", "2009-11-05", "2009-11-20"},
    {"brainstorming10s1", "2010-02-22", "2010-03-14"},
    {"requirements10s1", "2010-03-15", "2010-04-04"},
    {"design10s1", "2010-04-05", "2010-04-25"},
    {"prototype10s1", "2010-04-26", "2010-05-16"},
    {"testing10s1", "2010-05-17", "2010-06-06"},
    {"delivery10s1", "2010-06-07", "2010-06-20"},
}};

constexpr std::array<const char*, 7> kActivities{"create", "update", "comment", "generate",
                                                 "response", "review", "use"};
constexpr std::array<std::pair<const char*, const char*>, 8> kLayers{{
    {"Wiki", "page"},
    {"Wiki", "bug"},
    {"MessageBoard", "topic"},
    {"MessageBoard", "reply"},
    {"Blog", "post"},
    {"FileSharing", "file"},
    {"SVN", "commit"},
    {"SVN", "branch"},
}};
constexpr int kGroups = 15;
constexpr int kStudentsPerGroup = 4;
constexpr int kMentors = 5;

// Days since 1970-01-01 (proleptic Gregorian).
int days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int>(doe) - 719468;
}

std::string civil_from_days(int z) {
  z += 719468;
  const int era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int y = static_cast<int>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y + (m <= 2), m, d);
  return buf;
}

int to_days(const char* iso) {
  auto d = parse_date(iso);
  return days_from_civil(d->year, static_cast<unsigned>(d->month), static_cast<unsigned>(d->day));
}

std::string quoted(std::string_view s) { return "\"" + escape_string(s) + "\""; }
std::string date_literal(const std::string& iso) { return quoted(iso) + "^^xsd:date"; }

struct Event {
  int day;
  std::string id;
  std::string activity;
  std::string layer;
  std::string layer_part;
  int group;
  std::string user;
  std::size_t artifact;
};

void emit_event(std::ostringstream& os, const Event& e, const std::string& artifact_name) {
  os << e.id << " @type \"Event\" .\n";
  os << e.id << " @activityType " << quoted(e.activity) << " .\n";
  os << e.id << " @timestamp " << date_literal(civil_from_days(e.day)) << " .\n";
  os << e.id << " @layer " << quoted(e.layer) << " .\n";
  os << e.id << " @layerPart " << quoted(e.layer_part) << " .\n";
  os << e.id << " @UserGroup \"project" << e.group << "\" .\n";
  os << e.id << " @UseName " << quoted(e.user) << " .\n";
  os << e.id << " @artifactName " << quoted(artifact_name) << " .\n";
  os << e.id << " @ArtifactName " << quoted(artifact_name) << " .\n";
  os << e.id << " wasControledBy " << e.user << " .\n";
}

}  // namespace

std::string events_fixture(std::uint64_t seed, std::size_t event_count) {
  if (event_count < 1) throw Error(ErrorKind::kUsage, "event count must be at least 1");
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::ostringstream os;
  os << "# course event log, seed " << seed << ", " << event_count << " events\n";

  std::vector<std::string> users;
  for (int g = 1; g <= kGroups; ++g)
    for (int s = 1; s <= kStudentsPerGroup; ++s) {
      std::string id = "student" + std::to_string((g - 1) * kStudentsPerGroup + s);
      users.push_back(id);
      os << id << " @type \"Agent\" .\n";
      os << id << " @name " << quoted(id) << " .\n";
      os << id << " @role \"student\" .\n";
      os << id << " @UserGroup \"project" << g << "\" .\n";
    }
  for (int m = 1; m <= kMentors; ++m) {
    std::string id = "mentor" + std::to_string(m);
    os << id << " @type \"Agent\" .\n";
    os << id << " @name " << quoted(id) << " .\n";
    os << id << " @role \"mentor\" .\n";
  }
  os << "lecturer1 @type \"Agent\" .\n";
  os << "lecturer1 @name \"lecturer1\" .\n";
  os << "lecturer1 @role \"lecturer\" .\n";

  const std::size_t random_events = event_count > 5 ? event_count - 5 : 0;
  const std::size_t artifact_count = std::max<std::size_t>(20, random_events / 10);
  static constexpr std::array<const char*, 5> kExtensions{".doc", ".java", ".txt", ".pdf", ".xml"};
  std::vector<std::string> artifact_names;
  for (std::size_t a = 0; a < artifact_count; ++a) {
    std::string id = "artifact" + std::to_string(a + 1);
    artifact_names.push_back("file" + std::to_string(a + 1) + kExtensions[a % kExtensions.size()]);
    os << id << " @type \"Artifact\" .\n";
    os << id << " @artifactName " << quoted(artifact_names.back()) << " .\n";
  }
  for (std::size_t a = 1; a < artifact_count; ++a)
    if (pick(4) == 0)
      os << "artifact" << a + 1 << " wasDerivedFrom artifact" << pick(a) + 1 << " .\n";

  // Random events, numbered in timestamp order.
  std::vector<Event> events(random_events);
  for (auto& e : events) {
    const Phase& ph = kPhases[pick(kPhases.size())];
    int first = to_days(ph.first);
    int span = to_days(ph.last) - first + 1;
    e.day = first + static_cast<int>(pick(static_cast<std::size_t>(span)));
    e.activity = kActivities[pick(kActivities.size())];
    const auto& layer = kLayers[pick(kLayers.size())];
    e.layer = layer.first;
    e.layer_part = layer.second;
    e.group = static_cast<int>(pick(kGroups)) + 1;
    e.user = users[static_cast<std::size_t>(e.group - 1) * kStudentsPerGroup + pick(kStudentsPerGroup)];
    e.artifact = pick(artifact_count);
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.day < b.day; });
  const int width = static_cast<int>(std::to_string(std::max<std::size_t>(random_events, 1)).size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "event%0*zu", width, i + 1);
    events[i].id = buf;
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    emit_event(os, e, artifact_names[e.artifact]);
    std::string artifact = "artifact" + std::to_string(e.artifact + 1);
    if (e.activity == "create" || e.activity == "generate") {
      os << artifact << " wasGeneratedBy " << e.id << " .\n";
    } else if (pick(10) < 7) {
      os << e.id << " used " << artifact << " .\n";
    }
    if (i > 0 && pick(2) == 0) {
      std::size_t window = std::min<std::size_t>(i, 25);
      os << e.id << " wasTriggeredBy " << events[i - 1 - pick(window)].id << " .\n";
    }
  }

  // Planted chain. Each chain event triggers only its successor, so the walk
  // event_s -> event_x1 -> event_r -> event_x2 -> event_d is the only one
  // between the two generate events.
  struct ChainEvent {
    const char* id;
    const char* activity;
    const char* layer;
    const char* part;
    const char* date;
    const char* artifact;
  };
  constexpr std::array<ChainEvent, 5> kChain{{
      {"event_s", "generate", "FileSharing", "file", "2009-11-14", "brainDoc.doc"},
      {"event_x1", "update", "Wiki", "page", "2009-11-12", "brainDoc.doc"},
      {"event_r", "response", "Wiki", "bug", "2009-11-10", "bugReport.txt"},
      {"event_x2", "comment", "MessageBoard", "topic", "2009-11-08", "designDoc.doc"},
      {"event_d", "generate", "FileSharing", "file", "2009-11-06", "designDoc.doc"},
  }};
  os << "artifact_brainDoc @type \"Artifact\" .\n";
  os << "artifact_brainDoc @artifactName \"brainDoc.doc\" .\n";
  os << "artifact_designDoc @type \"Artifact\" .\n";
  os << "artifact_designDoc @artifactName \"designDoc.doc\" .\n";
  os << "artifact_bugReport @type \"Artifact\" .\n";
  os << "artifact_bugReport @artifactName \"bugReport.txt\" .\n";
  const int chain_group = 4;
  for (std::size_t i = 0; i < kChain.size(); ++i) {
    const auto& c = kChain[i];
    Event e;
    e.id = c.id;
    e.day = to_days(c.date);
    e.activity = c.activity;
    e.layer = c.layer;
    e.layer_part = c.part;
    e.group = chain_group;
    e.user = users[(chain_group - 1) * kStudentsPerGroup + i % kStudentsPerGroup];
    emit_event(os, e, c.artifact);
    if (i + 1 < kChain.size()) os << c.id << " wasTriggeredBy " << kChain[i + 1].id << " .\n";
  }
  os << "artifact_brainDoc wasGeneratedBy event_s .\n";
  os << "artifact_designDoc wasGeneratedBy event_d .\n";
  os << "event_r used artifact_bugReport .\n";
  os << "artifact_designDoc wasDerivedFrom artifact_brainDoc .\n";
  return os.str();
}

std::string generate_fixture(FixtureKind kind, std::uint64_t seed, std::size_t event_count) {
  switch (kind) {
    case FixtureKind::kBiblio: return biblio_fixture();
    case FixtureKind::kEvents: return events_fixture(seed, event_count);
  }
  throw Error(ErrorKind::kUsage, "unknown fixture kind");
}

}  // namespace fpsparql
