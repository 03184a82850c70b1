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

#include "fdl/datagen.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "fdl/errors.hpp"
#include "fdl/normalize.hpp"
#include "fdl/reasoner.hpp"

namespace fdl {

// ---------------------------------------------------------------------------
// RNG
// ---------------------------------------------------------------------------

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

Xorshift64Star::Xorshift64Star(uint64_t seed) {
    uint64_t s = seed;
    state_ = splitmix64(s);
    if (state_ == 0)
        state_ = 0x9E3779B97F4A7C15ull;
}

uint64_t Xorshift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
}

uint64_t Xorshift64Star::below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

double Xorshift64Star::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string>& default_streets() {
    static const std::vector<std::string> streets = {
        "ClarenceRoad",  "MareStreet",    "LavenderHill",  "StJohnsRoad",
        "HighRoadWoodGreen", "BrixtonRoad", "PeckhamHighStreet", "TottenhamHighRoad",
        "WalworthRoad",  "CamdenHighStreet", "EalingBroadway", "CroydonNorthEnd",
    };
    return streets;
}

std::vector<ClassPlan> published_counts() {
    return {
        {"Vandalism", 57, 57},   {"Riot", 21, 21},           {"AbnormalBehavior", 80, 80},
        {"Crowding", 64, 64},    {"DamageStructure", 9, 9},  {"DamageVehicle", 16, 16},
        {"Throwing", 30, 30},
    };
}

} // namespace

ScenarioConfig ScenarioConfig::table2_profile(uint64_t seed) {
    ScenarioConfig c;
    c.seed = seed;
    c.classes = published_counts();
    c.streets = default_streets();
    return c;
}

ScenarioConfig ScenarioConfig::table4_profile(uint64_t seed) {
    ScenarioConfig c;
    c.seed = seed;
    c.classes = published_counts();
    // Match counts follow the reported per-class true positives.
    std::map<std::string, int> tp = {
        {"Vandalism", 42},     {"Riot", 5},           {"AbnormalBehavior", 70},
        {"Crowding", 60},      {"DamageStructure", 9}, {"DamageVehicle", 11},
        {"Throwing", 30},
    };
    for (auto& plan : c.classes)
        plan.match_count = tp.at(plan.name);
    c.streets = default_streets();
    return c;
}

// ---------------------------------------------------------------------------
// Scenario generation
// ---------------------------------------------------------------------------

namespace {

struct VariantAtom {
    bool is_role = false;
    std::string predicate;
    int subject = 0;
    int object = 0;   // role only; -1 when the object is a constant
    std::string object_constant;
};

// One conjunctive witness pattern for a class body, rooted at variable 0.
struct Variant {
    std::vector<VariantAtom> atoms;
    bool has_part_edge = false;
};

Variant to_variant(const std::vector<ProgramAtom>& body) {
    Variant v;
    for (const auto& atom : body) {
        switch (atom.kind) {
        case PredKind::Concept:
            v.atoms.push_back({false, atom.predicate, atom.x.var, 0, {}});
            break;
        case PredKind::Role: {
            VariantAtom va{true, atom.predicate, atom.x.var, atom.y.var, {}};
            if (!atom.y.is_var()) {
                va.object = -1;
                va.object_constant = atom.y.value;
            }
            if (atom.predicate == "part")
                v.has_part_edge = true;
            v.atoms.push_back(std::move(va));
            break;
        }
        case PredKind::Any:
            break; // root is always an asserted event
        default:
            break;
        }
    }
    return v;
}

class ScenarioBuilder {
public:
    ScenarioBuilder(const ScenarioConfig& config)
        : config_(config),
          rng_(config.seed),
          kb_(builtin_ontology({false, true})),
          streets_(config.streets.empty() ? default_streets() : config.streets) {
        collect_variants();
    }

    Scenario build() {
        make_cameras();
        for (const auto& name : processing_order())
            plant_matched(name);
        for (const auto& plan : config_.classes)
            plant_unmatched(plan.name);
        plant_distractors();
        return std::move(scenario_);
    }

private:
    const ScenarioConfig& config_;
    Xorshift64Star rng_;
    KnowledgeBase kb_;
    std::vector<std::string> streets_;
    Scenario scenario_;

    std::map<std::string, std::vector<Variant>> variants_;  // class -> witness patterns
    std::map<std::string, std::set<std::string>> crime_refs_; // class -> crime classes in bodies
    std::set<std::string> crime_names_;

    std::map<std::string, int> variant_cursor_;  // cycling per class
    std::map<std::string, int> matched_created_; // per-class matched members so far
    std::map<std::string, int> plan_gold_;
    std::map<std::string, int> plan_match_;

    struct PoolEntry {
        std::string id;
        int uses = 0;
    };
    std::map<std::string, std::vector<PoolEntry>> pools_; // signature key -> members

    int event_counter_ = 0;
    int object_counter_ = 0;
    int act_counter_ = 0;
    int street_cursor_ = 0;
    std::map<std::string, bool> is_endurant_class_;

    std::string next_event_id() {
        char buf[16];
        std::snprintf(buf, sizeof buf, "ev%04d", ++event_counter_);
        return buf;
    }
    std::string next_object_id() {
        char buf[16];
        std::snprintf(buf, sizeof buf, "obj%04d", ++object_counter_);
        return buf;
    }
    std::string next_act_id() {
        char buf[16];
        std::snprintf(buf, sizeof buf, "act%04d", ++act_counter_);
        return buf;
    }

    void collect_variants() {
        for (const auto& plan : config_.classes) {
            crime_names_.insert(plan.name);
            plan_gold_[plan.name] = plan.gold_count;
            plan_match_[plan.name] = plan.match_count;
        }
        for (const auto& [head, body] : crime_gci_bodies(kb_)) {
            if (!crime_names_.count(head))
                continue;
            for (auto& conj : compile_concept_to_bodies(body, body->to_text()))
                variants_[head].push_back(to_variant(conj));
        }
        for (const auto& plan : config_.classes) {
            if (plan.match_count > 0 && variants_[plan.name].empty())
                throw NoGciForClassError("class '" + plan.name +
                                         "' has no classification GCI bodies to plant");
            for (const auto& variant : variants_[plan.name])
                for (const auto& atom : variant.atoms)
                    if (!atom.is_role && crime_names_.count(atom.predicate) &&
                        atom.subject != 0)
                        crime_refs_[plan.name].insert(atom.predicate);
        }
    }

    // Parents go first so their shared sub-events count toward the sub-event
    // classes' matched budgets; standalone fill then tops the leaves up.
    std::vector<std::string> processing_order() {
        std::vector<std::string> order;
        std::set<std::string> done;
        while (order.size() < config_.classes.size()) {
            bool advanced = false;
            for (const auto& plan : config_.classes) {
                if (done.count(plan.name))
                    continue;
                bool ready = true;
                for (const auto& other : config_.classes) {
                    if (other.name == plan.name || done.count(other.name))
                        continue;
                    if (crime_refs_[other.name].count(plan.name)) {
                        ready = false; // someone still to come references us
                        break;
                    }
                }
                if (ready) {
                    order.push_back(plan.name);
                    done.insert(plan.name);
                    advanced = true;
                }
            }
            if (!advanced)
                throw Error("classification GCIs reference each other cyclically");
        }
        return order;
    }

    void make_cameras() {
        for (int i = 0; i < config_.camera_count; ++i) {
            char id[16], lat[32], lon[32];
            std::snprintf(id, sizeof id, "C%03d", i + 1);
            // Central-London bounding box.
            std::snprintf(lat, sizeof lat, "%.6f", 51.46 + rng_.unit() * 0.10);
            std::snprintf(lon, sizeof lon, "%.6f", -0.20 + rng_.unit() * 0.17);
            CameraEntry entry;
            entry.id = id;
            entry.latitude = lat;
            entry.longitude = lon;
            entry.location_name = streets_[i % streets_.size()];
            entry.start_time = "2011-08-08T20:00:00Z";
            entry.end_time = "2011-08-09T04:00:00Z";
            scenario_.catalog.entries.push_back(entry);

            char src[16], res[16], vid[16];
            std::snprintf(src, sizeof src, "src%03d", i + 1);
            std::snprintf(res, sizeof res, "res%03d", i + 1);
            std::snprintf(vid, sizeof vid, "vid%03d", i + 1);

            AnnotationRecord source;
            source.kind = AnnotationRecord::Kind::Source;
            source.id = src;
            source.links.push_back({"hasCameraId", entry.id});
            source.data.push_back({"hasLatitude", entry.latitude});
            source.data.push_back({"hasLongitude", entry.longitude});
            source.data.push_back({"hasLocationName", entry.location_name});
            scenario_.annotations.push_back(std::move(source));

            AnnotationRecord resource;
            resource.kind = AnnotationRecord::Kind::Resource;
            resource.id = res;
            resource.links.push_back({"hasVideoId", vid});
            scenario_.annotations.push_back(std::move(resource));

            AnnotationRecord link;
            link.kind = AnnotationRecord::Kind::RoleLink;
            link.id = src;
            link.links.push_back({"has", res});
            scenario_.annotations.push_back(std::move(link));
        }
    }

    int attach_cursor_ = 0;

    void attach_to_resource(AnnotationRecord& record) {
        if (scenario_.catalog.entries.empty())
            return;
        int idx = attach_cursor_++ % static_cast<int>(scenario_.catalog.entries.size());
        char res[16];
        std::snprintf(res, sizeof res, "res%03d", idx + 1);
        record.links.push_back({"isFrom", res});
    }

    bool is_endurant_class(const std::string& name) {
        auto it = is_endurant_class_.find(name);
        if (it == is_endurant_class_.end()) {
            bool v = is_subsumed(kb_, Concept::atomic(name), "Endurant");
            it = is_endurant_class_.emplace(name, v).first;
        }
        return it->second;
    }

    // Emits the declaring record for a gold event: an Event assertion (the
    // population anchor that survives the drop protocol) plus one explicit
    // assertion per gold class.
    std::string new_gold_event(const std::set<std::string>& gold_classes) {
        std::string id = next_event_id();
        AnnotationRecord rec;
        rec.kind = AnnotationRecord::Kind::Event;
        rec.id = id;
        rec.type = "Event";
        attach_to_resource(rec);
        scenario_.annotations.push_back(std::move(rec));
        for (const auto& cls : gold_classes) {
            AnnotationRecord typed;
            typed.kind = AnnotationRecord::Kind::Event;
            typed.id = id;
            typed.type = cls;
            scenario_.annotations.push_back(std::move(typed));
            scenario_.gold[cls].insert(id);
        }
        return id;
    }

    void add_link(const std::string& subject, const std::string& role,
                  const std::string& target) {
        AnnotationRecord rec;
        rec.kind = AnnotationRecord::Kind::RoleLink;
        rec.id = subject;
        rec.links.push_back({role, target});
        scenario_.annotations.push_back(std::move(rec));
    }

    void add_street(const std::string& subject, const std::string& street) {
        AnnotationRecord rec;
        rec.kind = AnnotationRecord::Kind::DataValue;
        rec.id = subject;
        rec.data.push_back({"hasLocationName", street});
        scenario_.annotations.push_back(std::move(rec));
    }

    std::string fresh_plain_individual(const std::set<std::string>& classes) {
        bool endurant = !classes.empty() && is_endurant_class(*classes.begin());
        std::string id = endurant ? next_object_id() : next_act_id();
        bool first = true;
        for (const auto& cls : classes) {
            AnnotationRecord rec;
            rec.kind = endurant ? AnnotationRecord::Kind::Endurant
                                : AnnotationRecord::Kind::Event;
            rec.id = id;
            rec.type = cls;
            if (first && !endurant)
                attach_to_resource(rec);
            scenario_.annotations.push_back(std::move(rec));
            first = false;
        }
        return id;
    }

    // Plants one full body pattern of `cls` on `root`, cycling this class's
    // variants. Auxiliary crime-class sub-events come from shared pools.
    void plant_pattern(const std::string& cls, const std::string& root) {
        auto& variants = variants_[cls];
        const Variant& variant = variants[variant_cursor_[cls]++ % variants.size()];
        instantiate_variant(variant, root);
    }

    void instantiate_variant(const Variant& variant, const std::string& root) {
        // Group constraints per variable.
        std::map<int, std::set<std::string>> classes_of;
        std::set<int> streeted;
        for (const auto& atom : variant.atoms) {
            if (!atom.is_role) {
                classes_of[atom.subject].insert(atom.predicate);
            } else if (atom.predicate == "locatedSameAs") {
                streeted.insert(atom.subject);
                if (atom.object >= 0)
                    streeted.insert(atom.object);
            }
        }

        std::map<int, std::string> individual_of;
        individual_of[0] = root;

        auto realize = [&](int var) -> std::string {
            auto found = individual_of.find(var);
            if (found != individual_of.end())
                return found->second;
            std::set<std::string> classes = classes_of[var];
            std::set<std::string> crime;
            std::set<std::string> plain;
            for (const auto& c : classes)
                (crime_names_.count(c) ? crime : plain).insert(c);
            std::string id;
            if (crime.empty()) {
                id = fresh_plain_individual(plain);
            } else {
                id = pool_member(classes, crime, plain, streeted.count(var) > 0);
            }
            individual_of[var] = id;
            return id;
        };

        // Root constraints: Perdurant holds through the asserted Event (or
        // the explicit act type); anything else is asserted outright.
        for (const auto& cls : classes_of[0]) {
            if (cls == "Perdurant" || crime_names_.count(cls))
                continue;
            AnnotationRecord rec;
            rec.kind = AnnotationRecord::Kind::Event;
            rec.id = root;
            rec.type = cls;
            scenario_.annotations.push_back(std::move(rec));
        }

        for (const auto& atom : variant.atoms) {
            if (!atom.is_role)
                continue;
            if (atom.predicate == "locatedSameAs") {
                // The same-street rule derives the edge; hand both ends a
                // common street from the rotating pool.
                std::string street = streets_[street_cursor_++ % streets_.size()];
                add_street(realize(atom.subject), street);
                if (atom.object >= 0)
                    add_street(realize(atom.object), street);
                continue;
            }
            std::string subject = realize(atom.subject);
            std::string target = atom.object >= 0 ? realize(atom.object) : atom.object_constant;
            add_link(subject, atom.predicate, target);
        }
    }

    // Shared sub-events, keyed by their full class signature plus whether
    // they carry street names. Keeping street-free parents away from
    // streeted pool members stops the same-street rule from leaking
    // classifications across plants.
    std::string pool_member(const std::set<std::string>& all_classes,
                            const std::set<std::string>& crime,
                            const std::set<std::string>& plain, bool streeted) {
        std::string key = streeted ? "st|" : "--|";
        for (const auto& c : all_classes)
            key += c + "|";
        auto& pool = pools_[key];

        for (auto& entry : pool) {
            if (entry.uses < config_.share_limit) {
                ++entry.uses;
                return entry.id;
            }
        }

        bool budget_ok = true;
        for (const auto& c : crime)
            if (matched_created_[c] >= plan_match_[c])
                budget_ok = false;
        if (!budget_ok && !pool.empty()) {
            // No budget for a new member: rotate over the existing ones.
            PoolEntry& entry = pool[static_cast<std::size_t>(pool_rotate_[key]++) % pool.size()];
            ++entry.uses;
            return entry.id;
        }

        std::string id = new_gold_event(crime);
        for (const auto& c : crime) {
            ++matched_created_[c];
            plant_pattern(c, id);
        }
        for (const auto& c : plain) {
            AnnotationRecord rec;
            rec.kind = AnnotationRecord::Kind::Event;
            rec.id = id;
            rec.type = c;
            scenario_.annotations.push_back(std::move(rec));
        }
        pool.push_back({id, 1});
        return pool.back().id;
    }

    std::map<std::string, int> pool_rotate_;

    void plant_matched(const std::string& cls) {
        while (matched_created_[cls] < plan_match_[cls]) {
            ++matched_created_[cls];
            std::string id = new_gold_event({cls});
            plant_pattern(cls, id);
        }
    }

    void plant_unmatched(const std::string& cls) {
        int unmatched = plan_gold_[cls] - static_cast<int>(scenario_.gold[cls].size());
        bool part_based = !variants_[cls].empty() && variants_[cls][0].has_part_edge;
        for (int i = 0; i < unmatched; ++i) {
            std::string id = new_gold_event({cls});
            if (part_based) {
                // Incomplete: the sub-event is a plain action, not a crime.
                std::string sub = fresh_plain_individual({"Action"});
                add_link(id, "part", sub);
            } else {
                // Incomplete: a generic participant instead of the
                // class-specific filler.
                std::string obj = fresh_plain_individual({"PhysicalEndurant"});
                add_link(id, "participant", obj);
            }
        }
    }

    void plant_distractors() {
        for (int i = 0; i < config_.distractor_count; ++i) {
            std::string id = next_event_id();
            AnnotationRecord rec;
            rec.kind = AnnotationRecord::Kind::Event;
            rec.id = id;
            rec.type = "Event";
            attach_to_resource(rec);
            scenario_.annotations.push_back(std::move(rec));
            std::string obj = fresh_plain_individual({"PhysicalEndurant"});
            add_link(id, "participant", obj);
        }
    }
};

} // namespace

Scenario generate(const ScenarioConfig& config) {
    for (const auto& plan : config.classes) {
        if (plan.gold_count < 0 || plan.match_count < 0 || plan.match_count > plan.gold_count)
            throw Error("class plan for '" + plan.name + "' has inconsistent counts");
    }
    if (config.camera_count < 0 || config.distractor_count < 0 || config.share_limit < 1)
        throw Error("scenario configuration has negative counts");
    ScenarioBuilder builder(config);
    return builder.build();
}

// ---------------------------------------------------------------------------
// Learning scenarios
// ---------------------------------------------------------------------------

LearningScenario plant_learning_scenario(const LearningScenarioConfig& config) {
    LearningScenario out;
    ConceptRef body = config.body
                          ? config.body
                          : Concept::exists(Role::atomic("immediateRelation"),
                                            Concept::atomic("Vehicle"));
    auto bodies = compile_concept_to_bodies(body, body->to_text());
    if (bodies.empty())
        throw NoGciForClassError("learning body compiles to no pattern");
    const auto& atoms = bodies.front();

    int noisy = static_cast<int>(config.noise * config.positives);

    int counter = 0;
    auto fresh = [&counter](const char* prefix) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%s%04d", prefix, ++counter);
        return std::string(buf);
    };

    // Collect the classes constrained on each non-root variable so
    // distractors can swap in wrong fillers.
    std::map<int, std::set<std::string>> classes_of;
    for (const auto& a : atoms)
        if (a.kind == PredKind::Concept && a.x.var != 0)
            classes_of[a.x.var].insert(a.predicate);

    auto plant_full = [&](const std::string& id, bool wrong_filler, bool wrong_role) {
        std::map<int, std::string> individual_of;
        individual_of[0] = id;
        auto realize = [&](int var) {
            auto it = individual_of.find(var);
            if (it != individual_of.end())
                return it->second;
            std::string obj = fresh("x");
            std::set<std::string> classes = classes_of[var];
            for (const auto& cls : classes) {
                AnnotationRecord rec;
                rec.kind = AnnotationRecord::Kind::Endurant;
                rec.id = obj;
                rec.type = wrong_filler ? (cls == "Structure" ? "Vehicle" : "Structure") : cls;
                out.annotations.push_back(std::move(rec));
            }
            if (classes.empty()) {
                AnnotationRecord rec;
                rec.kind = AnnotationRecord::Kind::Endurant;
                rec.id = obj;
                rec.type = "PhysicalEndurant";
                out.annotations.push_back(std::move(rec));
            }
            individual_of[var] = obj;
            return obj;
        };
        for (const auto& a : atoms) {
            if (a.kind != PredKind::Role)
                continue;
            std::string subject = realize(a.x.var);
            std::string target = a.y.is_var() ? realize(a.y.var) : a.y.value;
            AnnotationRecord rec;
            rec.kind = AnnotationRecord::Kind::RoleLink;
            rec.id = subject;
            rec.links.push_back({wrong_role ? "participant" : a.predicate, target});
            out.annotations.push_back(std::move(rec));
        }
    };

    for (int i = 0; i < config.positives; ++i) {
        std::string id = fresh("pos");
        AnnotationRecord rec;
        rec.kind = AnnotationRecord::Kind::Event;
        rec.id = id;
        rec.type = "Event";
        out.annotations.push_back(std::move(rec));
        AnnotationRecord typed;
        typed.kind = AnnotationRecord::Kind::Event;
        typed.id = id;
        typed.type = config.target;
        out.annotations.push_back(std::move(typed));
        out.gold[config.target].insert(id);
        // Noisy positives keep the label but lack the pattern.
        if (i >= config.positives - noisy)
            continue;
        plant_full(id, false, false);
    }

    for (int i = 0; i < config.distractors; ++i) {
        std::string id = fresh("neg");
        AnnotationRecord rec;
        rec.kind = AnnotationRecord::Kind::Event;
        rec.id = id;
        rec.type = "Event";
        out.annotations.push_back(std::move(rec));
        switch (i % 3) {
        case 0:
            plant_full(id, true, false); // wrong filler class
            break;
        case 1:
            break; // bare event, missing edge
        case 2:
            plant_full(id, false, true); // right filler, wrong role
            break;
        }
    }
    return out;
}

} // namespace fdl
