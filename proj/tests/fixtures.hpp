// Copyright 2026 forensic-dl contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Canonical annotation fixtures shared by unit and acceptance tests.

#ifndef FDL_TESTS_FIXTURES_HPP
#define FDL_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "fdl/model.hpp"
#include "fdl/ontology.hpp"

namespace fdl::testing {

// The thrown-object scene: a person participates in a throwing event whose
// footage traces back through a resource to a camera source.
inline std::vector<AnnotationRecord> throwing_scene_records() {
    using K = AnnotationRecord::Kind;
    std::vector<AnnotationRecord> records;
    records.push_back({K::Endurant, "personA", "NaturalPerson",
                       {{"participateIn", "throwing5"}}, {}});
    records.push_back({K::Event, "throwing5", "Throwing", {{"isFrom", "endurant6"}}, {}});
    records.push_back({K::Resource, "endurant6", "", {{"hasVideoId", "video6"}}, {}});
    records.push_back({K::Source, "endurant7", "",
                       {{"hasCameraId", "cameraC004"}, {"has", "endurant6"}}, {}});
    return records;
}

// The query asked of the scene above: someone who participates in a physical
// aggression whose footage comes from the camera source C004.
inline ConceptRef throwing_scene_query() {
    return Concept::exists(
        Role::atomic("participateIn"),
        Concept::conj(
            {Concept::atomic("PhysicalAggression"),
             Concept::exists(Role::atomic("isFrom"),
                             Concept::conj({Concept::atomic("Source"),
                                            Concept::exists(Role::atomic("hasCameraId"),
                                                            Concept::nominal("cameraC004"))}))}));
}

// The damaged-vehicle scene: an image classifier reports a vehicle and a
// window-breaking event.
inline std::vector<AnnotationRecord> damaged_vehicle_records() {
    using K = AnnotationRecord::Kind;
    std::vector<AnnotationRecord> records;
    records.push_back({K::Event, "Perdurant2", "BreakingWindows",
                       {{"participant", "Endurant1"}}, {}});
    records.push_back({K::Endurant, "Endurant1", "Vehicle", {}, {}});
    return records;
}

// A crowd and an explosion on the same street, combined under one complex
// event; classified as vandalism via the same-street rule.
inline std::vector<AnnotationRecord> same_street_vandalism_records() {
    using K = AnnotationRecord::Kind;
    std::vector<AnnotationRecord> records;
    records.push_back({K::Event, "complex1", "Perdurant", {{"part", "crowd1"}}, {}});
    records.push_back({K::Event, "crowd1", "Crowding", {},
                       {{"hasLocationName", "ClarenceRoad"}}});
    records.push_back({K::Event, "blast1", "Explosion", {},
                       {{"hasLocationName", "ClarenceRoad"}}});
    return records;
}

} // namespace fdl::testing

#endif
