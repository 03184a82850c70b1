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

#include "fdl/ontology.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fdl/errors.hpp"
#include "fdl/text.hpp"

namespace fdl {

namespace {

ConceptRef A(const std::string& name) { return Concept::atomic(name); }
RoleRef R(const std::string& name) { return Role::atomic(name); }
ConceptRef some(const std::string& role, ConceptRef filler) {
    return Concept::exists(R(role), std::move(filler));
}
ConceptRef both(ConceptRef a, ConceptRef b) {
    return Concept::conj({std::move(a), std::move(b)});
}

Axiom sub(const std::string& lhs, const std::string& rhs) {
    return Gci{A(lhs), A(rhs)};
}

// Perdurant [and] exists participant.(Filler [and] exists participantIn.Act)
ConceptRef participant_pattern(const std::string& filler, ConceptRef act) {
    return both(A("Perdurant"),
                some("participant", both(A(filler), some("participantIn", std::move(act)))));
}

// Perdurant [and] exists part.Sub
ConceptRef part_pattern(ConceptRef sub_event) {
    return both(A("Perdurant"), some("part", std::move(sub_event)));
}

const char* kPerdurantConcepts[] = {
    "SpatioTemporalParticular", "Perdurant", "Stative", "Event",
    "State", "Process", "Achievement", "Accomplishment",
    "MetaLevelEvent", "Accusing", "Believing", "Liking",
    "PsychologicalAggression", "Blaming", "Bullying", "Decrying", "Harassing",
    "Action", "Dancing", "Greeting", "Hugging", "Gesture",
    "PhysicalAggression", "ActivePhysicalAggression",
    "Fighting", "Kicking", "Beating", "Throwing", "BreakingDoor", "BreakingWindows",
    "Explosion", "Saying", "Seeing",
    "CriminalEvent", "EventCategory", "CrimeCategory", "CrimeAgainstProperty",
    "Vandalism", "DamageVehicle", "DamageStructure", "Riot", "AbnormalBehavior",
    "Crowding", "CyberCrime",
};

const char* kEndurantConcepts[] = {
    "Endurant", "NonPhysicalEndurant", "PhysicalEndurant", "ArbitrarySum",
    "NaturalPerson", "GroupOfPeople", "Group", "Vehicle", "Structure", "Arm",
    "Source", "Resource",
};

const char* kRoles[] = {
    "participant", "participantIn", "participateIn", "has", "isFrom", "part",
    "hasPart", "isAbout", "locatedSameAs", "immediateRelation",
    "hasVideoId", "hasCameraId",
};

const char* kDataProps[] = {"hasLatitude", "hasLongitude", "hasLocationName"};

std::vector<Axiom> published_crime_gcis() {
    ConceptRef breaking = Concept::disj({A("BreakingDoor"), A("BreakingWindows")});
    std::vector<Axiom> out;
    out.push_back(Gci{participant_pattern("Vehicle", breaking), A("DamageVehicle")});
    out.push_back(Gci{participant_pattern("Structure", A("Kicking")), A("DamageStructure")});
    out.push_back(Gci{participant_pattern("Structure", A("Beating")), A("DamageStructure")});
    out.push_back(Gci{participant_pattern("Structure", A("BreakingWindows")), A("DamageStructure")});
    out.push_back(Gci{part_pattern(both(A("Crowding"), A("DamageStructure"))), A("Vandalism")});
    out.push_back(Gci{part_pattern(both(A("Crowding"), A("DamageVehicle"))), A("Vandalism")});
    out.push_back(Gci{part_pattern(both(A("Explosion"), A("Throwing"))), A("Vandalism")});
    out.push_back(Gci{part_pattern(both(A("Crowding"), some("locatedSameAs", A("Explosion")))),
                      A("Vandalism")});
    out.push_back(Gci{part_pattern(both(A("Crowding"), some("locatedSameAs", A("DamageStructure")))),
                      A("Vandalism")});
    out.push_back(Gci{part_pattern(both(A("Crowding"), some("locatedSameAs", A("Throwing")))),
                      A("Vandalism")});
    out.push_back(Gci{part_pattern(both(A("DamageStructure"), some("locatedSameAs", A("Throwing")))),
                      A("Vandalism")});
    return out;
}

std::vector<Axiom> learned_gcis() {
    std::vector<Axiom> out;
    out.push_back(Gci{both(A("PhysicalAggression"), some("immediateRelation", A("Structure"))),
                      A("DamageStructure")});
    out.push_back(Gci{some("immediateRelation", A("Vehicle")), A("DamageVehicle")});
    out.push_back(Gci{some("immediateRelation", A("Vandalism")), A("AbnormalBehavior")});
    out.push_back(Gci{some("immediateRelation", A("Arm")), A("Throwing")});
    out.push_back(Gci{some("immediateRelation", A("Group")), A("Crowding")});
    return out;
}

// Placeholders for the class counts the published material does not spell
// out: Riot (4), AbnormalBehavior (2), Crowding (1), Throwing (1).
std::vector<Axiom> invented_gcis() {
    std::vector<Axiom> out;
    out.push_back(sub("Burning", "ActivePhysicalAggression"));
    out.push_back(sub("Swinging", "Gesture"));
    out.push_back(Gci{both(A("Perdurant"), some("participant", A("GroupOfPeople"))),
                      A("Crowding")});
    out.push_back(Gci{participant_pattern("Arm", A("Swinging")), A("Throwing")});
    out.push_back(Gci{part_pattern(both(A("Burning"), A("Crowding"))), A("Riot")});
    out.push_back(Gci{part_pattern(both(A("Burning"), A("Throwing"))), A("Riot")});
    out.push_back(Gci{part_pattern(both(A("Burning"), A("Explosion"))), A("Riot")});
    out.push_back(Gci{part_pattern(both(A("Crowding"), A("Explosion"))), A("Riot")});
    out.push_back(Gci{part_pattern(A("Fighting")), A("AbnormalBehavior")});
    out.push_back(Gci{part_pattern(A("PsychologicalAggression")), A("AbnormalBehavior")});
    return out;
}

} // namespace

const std::vector<std::string>& crime_classes() {
    static const std::vector<std::string> classes = {
        "Vandalism", "Riot", "AbnormalBehavior", "Crowding",
        "DamageStructure", "DamageVehicle", "Throwing",
    };
    return classes;
}

KnowledgeBase builtin_ontology(const OntologyOptions& options) {
    KnowledgeBase kb;

    for (const char* c : kPerdurantConcepts)
        kb.declare_concept(c);
    for (const char* c : kEndurantConcepts)
        kb.declare_concept(c);
    for (const char* r : kRoles)
        kb.declare_role(r);
    for (const char* p : kDataProps)
        kb.declare_data_property(p);

    // Perdurant side.
    kb.add(sub("Perdurant", "SpatioTemporalParticular"));
    kb.add(Gci{A("Perdurant"), some("participant", A("Endurant"))});
    kb.add(Gci{A("Fighting"), some("participant", A("GroupOfPeople"))});
    kb.add(Disjointness{A("Perdurant"), A("Endurant")});
    kb.add(Disjointness{A("Kicking"), A("Vehicle")});
    kb.add(sub("Stative", "Perdurant"));
    kb.add(sub("Event", "Perdurant"));

    kb.add(sub("State", "Stative"));
    kb.add(sub("MetaLevelEvent", "State"));
    kb.add(sub("Accusing", "MetaLevelEvent"));
    kb.add(sub("Believing", "MetaLevelEvent"));
    kb.add(sub("Liking", "MetaLevelEvent"));
    kb.add(sub("PsychologicalAggression", "State"));
    kb.add(sub("Blaming", "PsychologicalAggression"));
    kb.add(sub("Bullying", "PsychologicalAggression"));
    kb.add(sub("Decrying", "PsychologicalAggression"));
    kb.add(sub("Harassing", "PsychologicalAggression"));

    kb.add(sub("Process", "Stative"));
    kb.add(sub("Action", "Process"));
    kb.add(sub("Dancing", "Action"));
    kb.add(sub("Greeting", "Action"));
    kb.add(sub("Hugging", "Action"));
    kb.add(sub("Gesture", "Process"));
    kb.add(sub("PhysicalAggression", "Process"));
    kb.add(sub("ActivePhysicalAggression", "PhysicalAggression"));
    kb.add(sub("Fighting", "ActivePhysicalAggression"));
    kb.add(sub("Kicking", "ActivePhysicalAggression"));
    kb.add(sub("Beating", "ActivePhysicalAggression"));
    kb.add(sub("Throwing", "ActivePhysicalAggression"));
    kb.add(sub("BreakingDoor", "ActivePhysicalAggression"));
    kb.add(sub("BreakingWindows", "ActivePhysicalAggression"));

    kb.add(sub("Accomplishment", "Event"));
    kb.add(sub("CriminalEvent", "Accomplishment"));
    kb.add(sub("EventCategory", "Accomplishment"));
    kb.add(sub("CrimeCategory", "Stative"));
    kb.add(sub("Achievement", "Event"));
    kb.add(sub("Saying", "Achievement"));
    kb.add(sub("Seeing", "Achievement"));
    kb.add(sub("Explosion", "Achievement"));

    kb.add(sub("CrimeAgainstProperty", "Accomplishment"));
    kb.add(sub("Vandalism", "CrimeAgainstProperty"));
    kb.add(sub("DamageVehicle", "CrimeAgainstProperty"));
    kb.add(sub("DamageStructure", "CrimeAgainstProperty"));
    kb.add(sub("Riot", "CriminalEvent"));
    kb.add(sub("AbnormalBehavior", "CriminalEvent"));
    kb.add(sub("Crowding", "CriminalEvent"));
    kb.add(sub("CyberCrime", "CriminalEvent"));

    // Endurant side.
    kb.add(sub("Endurant", "SpatioTemporalParticular"));
    kb.add(Gci{A("Endurant"), some("participantIn", A("Perdurant"))});
    kb.add_inverse_of("participantIn", "participant");
    kb.add(sub("NonPhysicalEndurant", "Endurant"));
    kb.add(sub("PhysicalEndurant", "Endurant"));
    kb.add(sub("ArbitrarySum", "Endurant"));
    kb.add(sub("NaturalPerson", "PhysicalEndurant"));
    kb.add(sub("GroupOfPeople", "PhysicalEndurant"));
    kb.add(sub("Group", "PhysicalEndurant"));
    kb.add(sub("Vehicle", "PhysicalEndurant"));
    kb.add(sub("Structure", "PhysicalEndurant"));
    kb.add(sub("Arm", "PhysicalEndurant"));

    // Media annotation model.
    kb.add(sub("Source", "Endurant"));
    kb.add(Gci{A("Source"), some("has", A("Resource"))});
    kb.add(sub("Resource", "Endurant"));
    kb.add(Gci{A("Resource"), some("has", A("Perdurant"))});
    kb.add_inverse_of("has", "isFrom");
    kb.add_transitive("has");
    kb.add_transitive("hasPart");

    // Same-street rule: two perdurants with the same location name are
    // located at the same place.
    Rule located;
    located.body = {
        {AtomKind::Class, "Perdurant", Term::var("p1"), {}},
        {AtomKind::Class, "Perdurant", Term::var("p2"), {}},
        {AtomKind::Data, "hasLocationName", Term::var("p1"), Term::var("l1")},
        {AtomKind::Data, "hasLocationName", Term::var("p2"), Term::var("l2")},
        {AtomKind::SameAs, "", Term::var("l1"), Term::var("l2")},
    };
    located.head = {AtomKind::Object, "locatedSameAs", Term::var("p1"), Term::var("p2")};
    kb.add_rule(located);

    for (auto& ax : published_crime_gcis())
        kb.add(std::move(ax));

    // Event-type traits of the four root categories.
    kb.set_traits("State", {EventTraits::Sign::Minus, EventTraits::Sign::Minus,
                            EventTraits::Cumulative::Cumulative});
    kb.set_traits("Process", {EventTraits::Sign::Minus, EventTraits::Sign::Plus,
                              EventTraits::Cumulative::Unspecified});
    kb.set_traits("Achievement", {EventTraits::Sign::Plus, EventTraits::Sign::Minus,
                                  EventTraits::Cumulative::NotCumulative});
    kb.set_traits("Accomplishment", {EventTraits::Sign::Plus, EventTraits::Sign::Plus,
                                     EventTraits::Cumulative::NotCumulative});

    if (options.include_learned_gcis) {
        for (auto& ax : learned_gcis())
            kb.add(std::move(ax));
    }
    if (options.include_invented_gcis) {
        kb.declare_concept("Burning");
        kb.declare_concept("Swinging");
        for (auto& ax : invented_gcis())
            kb.add(std::move(ax));
    }

    kb.finalize();
    return kb;
}

bool is_invented_axiom(const Axiom& ax) {
    static const std::set<std::string> invented = [] {
        std::set<std::string> texts;
        for (const auto& a : invented_gcis())
            texts.insert(axiom_to_text(a));
        return texts;
    }();
    return invented.count(axiom_to_text(ax)) > 0;
}

std::string builtin_ontology_text(const OntologyOptions& options) {
    KnowledgeBase kb = builtin_ontology(options);
    std::function<std::string(const Axiom&)> comment = [](const Axiom& ax) {
        return is_invented_axiom(ax) ? std::string("INVENTED") : std::string();
    };
    return serialize_kb(kb, &comment);
}

std::vector<std::pair<std::string, ConceptRef>> crime_gci_bodies(const KnowledgeBase& kb) {
    std::set<std::string> heads(crime_classes().begin(), crime_classes().end());
    std::vector<std::pair<std::string, ConceptRef>> out;
    for (const auto& ax : kb.axioms()) {
        const auto* g = std::get_if<Gci>(&ax);
        if (!g || g->rhs->kind() != ConceptKind::Atomic)
            continue;
        if (heads.count(g->rhs->name()) == 0)
            continue;
        if (g->lhs->kind() == ConceptKind::Atomic)
            continue; // taxonomy edge, not a classification pattern
        out.emplace_back(g->rhs->name(), g->lhs);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Annotations
// ---------------------------------------------------------------------------

std::vector<Axiom> ingest_annotations(const std::vector<AnnotationRecord>& records) {
    std::set<std::string> declared;
    for (const auto& r : records) {
        switch (r.kind) {
        case AnnotationRecord::Kind::Event:
        case AnnotationRecord::Kind::Endurant:
        case AnnotationRecord::Kind::Resource:
        case AnnotationRecord::Kind::Source:
            declared.insert(r.id);
            break;
        default:
            break;
        }
    }

    // External identifier spaces: link targets that name media artifacts
    // rather than annotated scene entities.
    auto external_role = [](const std::string& role) {
        return role == "hasVideoId" || role == "hasCameraId";
    };

    std::vector<Axiom> out;
    for (const auto& r : records) {
        bool declares = r.kind == AnnotationRecord::Kind::Event ||
                        r.kind == AnnotationRecord::Kind::Endurant ||
                        r.kind == AnnotationRecord::Kind::Resource ||
                        r.kind == AnnotationRecord::Kind::Source;
        if (!declares && declared.count(r.id) == 0)
            throw DanglingReferenceError("record '" + r.id + "' is never declared");

        std::string type = r.type;
        if (type.empty() && r.kind == AnnotationRecord::Kind::Resource)
            type = "Resource";
        if (type.empty() && r.kind == AnnotationRecord::Kind::Source)
            type = "Source";
        if (declares && !type.empty())
            out.push_back(ConceptAssertion{r.id, Concept::atomic(type)});

        for (const auto& link : r.links) {
            if (!external_role(link.role) && declared.count(link.target) == 0)
                throw DanglingReferenceError("record '" + r.id + "' links to undeclared '" +
                                             link.target + "' via " + link.role);
            out.push_back(RoleAssertion{r.id, link.target, link.role});
        }
        for (const auto& d : r.data)
            out.push_back(DataAssertion{r.id, d.prop, d.value});
    }
    return out;
}

namespace {

AnnotationRecord::Kind kind_from_string(const std::string& s, int line) {
    if (s == "event")
        return AnnotationRecord::Kind::Event;
    if (s == "endurant")
        return AnnotationRecord::Kind::Endurant;
    if (s == "resource")
        return AnnotationRecord::Kind::Resource;
    if (s == "source")
        return AnnotationRecord::Kind::Source;
    if (s == "role-link")
        return AnnotationRecord::Kind::RoleLink;
    if (s == "data-value")
        return AnnotationRecord::Kind::DataValue;
    throw Error("annotations line " + std::to_string(line) + ": unknown kind '" + s + "'");
}

const char* kind_to_string(AnnotationRecord::Kind k) {
    switch (k) {
    case AnnotationRecord::Kind::Event: return "event";
    case AnnotationRecord::Kind::Endurant: return "endurant";
    case AnnotationRecord::Kind::Resource: return "resource";
    case AnnotationRecord::Kind::Source: return "source";
    case AnnotationRecord::Kind::RoleLink: return "role-link";
    case AnnotationRecord::Kind::DataValue: return "data-value";
    }
    return "event";
}

} // namespace

std::vector<AnnotationRecord> parse_annotations_jsonl(const std::string& text) {
    std::vector<AnnotationRecord> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error("annotations line " + std::to_string(line_no) + ": " + e.what());
        }
        AnnotationRecord r;
        if (!j.contains("kind") || !j.contains("id"))
            throw Error("annotations line " + std::to_string(line_no) +
                        ": record needs 'kind' and 'id'");
        r.kind = kind_from_string(j["kind"].get<std::string>(), line_no);
        r.id = j["id"].get<std::string>();
        if (j.contains("type"))
            r.type = j["type"].get<std::string>();
        if (j.contains("links"))
            for (const auto& l : j["links"])
                r.links.push_back({l["role"].get<std::string>(), l["target"].get<std::string>()});
        if (j.contains("data"))
            for (const auto& d : j["data"])
                r.data.push_back({d["prop"].get<std::string>(), d["value"].get<std::string>()});
        out.push_back(std::move(r));
    }
    return out;
}

std::string annotations_to_jsonl(const std::vector<AnnotationRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        nlohmann::json j;
        j["kind"] = kind_to_string(r.kind);
        j["id"] = r.id;
        if (!r.type.empty())
            j["type"] = r.type;
        if (!r.links.empty()) {
            nlohmann::json links = nlohmann::json::array();
            for (const auto& l : r.links)
                links.push_back({{"role", l.role}, {"target", l.target}});
            j["links"] = std::move(links);
        }
        if (!r.data.empty()) {
            nlohmann::json data = nlohmann::json::array();
            for (const auto& d : r.data)
                data.push_back({{"prop", d.prop}, {"value", d.value}});
            j["data"] = std::move(data);
        }
        out << j.dump() << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Camera catalog
// ---------------------------------------------------------------------------

namespace {

double parse_degree(const std::string& s, const std::string& what, const std::string& camera) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw MalformedCoordinateError("camera '" + camera + "': bad " + what + " '" + s + "'");
    }
}

} // namespace

std::vector<std::vector<double>> camera_distances(const CameraCatalog& catalog) {
    constexpr double kEarthRadiusM = 6371000.0;
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

    std::vector<std::pair<double, double>> radians;
    radians.reserve(catalog.entries.size());
    for (const auto& e : catalog.entries) {
        double lat = parse_degree(e.latitude, "latitude", e.id);
        double lon = parse_degree(e.longitude, "longitude", e.id);
        radians.emplace_back(lat * kDegToRad, lon * kDegToRad);
    }

    std::size_t n = radians.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dlat = radians[j].first - radians[i].first;
            double dlon = radians[j].second - radians[i].second;
            double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                       std::cos(radians[i].first) * std::cos(radians[j].first) *
                           std::sin(dlon / 2) * std::sin(dlon / 2);
            double d = 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(a)));
            dist[i][j] = dist[j][i] = d;
        }
    }
    return dist;
}

std::string cameras_to_tsv(const CameraCatalog& catalog) {
    std::ostringstream out;
    out << "id\tlat\tlon\tstreet\tstart\tend\n";
    for (const auto& e : catalog.entries)
        out << e.id << "\t" << e.latitude << "\t" << e.longitude << "\t" << e.location_name
            << "\t" << e.start_time << "\t" << e.end_time << "\n";
    return out.str();
}

} // namespace fdl
