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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace fpsparql {

enum class FixtureKind { kBiblio, kEvents };

// "biblio" or "events"; throws Error(kUsage) otherwise.
FixtureKind parse_fixture_kind(std::string_view name);

// Small bibliographic graph: four papers, two authors, two venues, a
// citation chain paper2 -> paper4 -> paper3 -> paper1 and the derivation
// history of paper1.
std::string biblio_fixture();

// Event-log graph for a two-semester course: `event_count` events (at least
// five) with agents and artifacts, phase-dated timestamps and one planted
// chain from the brainDoc.doc generate event to the designDoc.doc generate
// event through a Wiki bug response. Byte-identical for equal arguments.
std::string events_fixture(std::uint64_t seed, std::size_t event_count);

std::string generate_fixture(FixtureKind kind, std::uint64_t seed, std::size_t event_count);

// Node ids of the planted chain, start first.
inline constexpr std::string_view kPlantedChain[] = {"event_s", "event_x1", "event_r", "event_x2",
                                                     "event_d"};

}  // namespace fpsparql
