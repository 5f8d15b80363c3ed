#include "ciflin/export.hpp"

namespace ciflin {

namespace {

Json pred_json(const PredPtr& p) { return to_string(p); }

Json conj_json(const Conj& c) { return c.to_string(); }

Json locs_json(const std::vector<std::string>& locs) {
    Json out = Json::array();
    for (const auto& l : locs) out.push_back(l);
    return out;
}

Json actions_json(const std::set<std::string>& s) {
    Json out = Json::array();
    for (const auto& a : s) out.push_back(a);
    return out;
}

Json linear_state_json(const LinearState& s) {
    Json out = Json::array();
    for (const auto& e : s) out.push_back(e ? *e : "_");
    return out;
}

} // namespace

Json model_to_json(const Model& m) {
    Json out;
    Json domains = Json::array();
    for (const auto& [name, d] : m.domains.vars)
        domains.push_back({{"variable", name}, {"domain", d.to_string()}});
    out["domains"] = std::move(domains);
    out["actions"] = m.actions;
    Json autos = Json::array();
    for (const auto& a : m.automata) {
        Json ja;
        ja["name"] = a->name;
        ja["locations"] = a->locations;
        Json init = Json::object(), inv = Json::object();
        for (const auto& loc : a->locations) {
            init[loc] = pred_json(a->init_of(loc));
            inv[loc] = pred_json(a->inv_of(loc));
        }
        ja["initial"] = std::move(init);
        ja["invariant"] = std::move(inv);
        Json edges = Json::array();
        for (const auto& e : a->edges)
            edges.push_back({{"source", e.src},
                             {"action", e.action},
                             {"reset", pred_json(e.reset)},
                             {"target", e.dst}});
        ja["edges"] = std::move(edges);
        ja["syncActions"] = actions_json(a->sync_actions);
        autos.push_back(std::move(ja));
    }
    out["automata"] = std::move(autos);
    out["composition"] = {{"name", m.composition_name},
                          {"term", comp_to_string(m.composition)}};
    return out;
}

Json sts_to_json(const Sts& sts) {
    Json out;
    out["composition"] = comp_to_string(sts.root);
    out["pruned"] = sts.pruned;
    out["stateCount"] = sts.states.size();
    Json states = Json::array();
    for (std::size_t i = 0; i < sts.states.size(); ++i) {
        Json s;
        s["id"] = i;
        if (sts.state_locs[i]) {
            s["kind"] = "reinit";
            s["locations"] = locs_json(*sts.state_locs[i]);
        } else {
            s["kind"] = "root";
        }
        s["display"] = sts.state_display(i);
        states.push_back(std::move(s));
    }
    out["states"] = std::move(states);
    Json acts = Json::array();
    for (const auto& e : sts.action_edges)
        acts.push_back({{"source", e.src},
                        {"target", e.dst},
                        {"action", e.action},
                        {"sync", e.sync},
                        {"u", conj_json(e.u)},
                        {"n", conj_json(e.n)},
                        {"nPrime", conj_json(e.n_prime)},
                        {"r", conj_json(e.r)}});
    out["actionTransitions"] = std::move(acts);
    Json envs = Json::array();
    for (const auto& e : sts.env_edges)
        envs.push_back({{"source", e.src},
                        {"target", e.dst},
                        {"u", conj_json(e.u)},
                        {"n", conj_json(e.n)},
                        {"syncActions", actions_json(e.sync_actions)}});
    out["envTransitions"] = std::move(envs);
    return out;
}

Json lits_to_json(const Lits& lits) {
    Json out;
    out["composition"] = comp_to_string(lits.composition);
    Json autos = Json::array();
    for (const auto& a : lits.statics.automata) autos.push_back(a->name);
    out["automata"] = std::move(autos);
    out["syncActions"] = actions_json(lits.statics.sync_actions);
    out["wildcards"] = lits.statics.wildcard_count;
    auto func_list = [&](const std::vector<std::map<std::string, PredPtr>>& fs) {
        Json list = Json::array();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            Json entry;
            entry["automaton"] = lits.statics.automata[i]->name;
            Json preds = Json::object();
            for (const auto& loc : lits.statics.automata[i]->locations)
                preds[loc] = pred_json(fs[i].at(loc));
            entry["predicates"] = std::move(preds);
            list.push_back(std::move(entry));
        }
        return list;
    };
    out["initFunctions"] = func_list(lits.statics.init_funcs);
    out["invariantFunctions"] = func_list(lits.statics.inv_funcs);
    Json trans = Json::array();
    for (const auto& t : lits.transitions)
        trans.push_back({{"source", linear_state_json(t.source)},
                         {"action", t.action},
                         {"reset", conj_json(t.reset)},
                         {"target", linear_state_json(t.target)}});
    out["actionTransitions"] = std::move(trans);
    return out;
}

Json linearization_to_json(const LinearizationResult& res) {
    Json out;
    out["location"] = res.location;
    out["pointers"] = res.pointers;
    Json domains = Json::object();
    for (const auto& [name, d] : res.pointer_domains) domains[name] = locs_json(d.locations);
    out["pointerDomains"] = std::move(domains);
    out["syncActions"] = actions_json(res.automaton->sync_actions);
    out["initial"] = pred_json(res.automaton->init_of(res.location));
    out["invariant"] = pred_json(res.automaton->inv_of(res.location));
    Json edges = Json::array();
    for (const auto& e : res.automaton->edges)
        edges.push_back({{"action", e.action}, {"reset", pred_json(e.reset)}});
    out["edges"] = std::move(edges);
    return out;
}

Json explicit_lts_to_json(const ExplicitLts& lts) {
    Json out;
    out["stateCount"] = lts.states.size();
    out["truncated"] = lts.truncated;
    out["initial"] = lts.initial;
    Json states = Json::array();
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        Json s;
        s["id"] = i;
        s["term"] = term_to_string(lts.states[i].term);
        Json valuation = Json::object();
        for (const auto& [name, v] : lts.states[i].valuation)
            valuation[name] = v.to_string();
        s["valuation"] = std::move(valuation);
        states.push_back(std::move(s));
    }
    out["states"] = std::move(states);
    Json acts = Json::array();
    for (const auto& e : lts.action_edges)
        acts.push_back({{"source", e.src},
                        {"target", e.dst},
                        {"action", e.action},
                        {"sync", e.sync}});
    out["actionEdges"] = std::move(acts);
    Json envs = Json::array();
    for (const auto& e : lts.env_edges) {
        Json labels = Json::array();
        for (const auto& a : e.sync_actions) labels.push_back(a);
        envs.push_back({{"source", e.src}, {"target", e.dst}, {"syncActions", labels}});
    }
    out["envEdges"] = std::move(envs);
    return out;
}

Json report_to_json(const CheckReport& r, bool timings) {
    Json out;
    out["check"] = r.name;
    out["pass"] = r.pass;
    out["budgetExceeded"] = r.budget_exceeded;
    if (!r.counterexample.empty()) out["counterexample"] = r.counterexample;
    Json stats;
    stats["states"] = r.stats.states;
    stats["pairs"] = r.stats.pairs;
    if (timings) stats["wallMs"] = r.stats.wall_ms;
    out["stats"] = std::move(stats);
    return out;
}

std::string report_to_text(const CheckReport& r, bool timings) {
    std::string out = r.pass ? "PASS  " : (r.budget_exceeded ? "BUDGET " : "FAIL  ");
    out += r.name;
    out += " (states=" + std::to_string(r.stats.states) +
           ", pairs=" + std::to_string(r.stats.pairs);
    if (timings) out += ", ms=" + std::to_string(r.stats.wall_ms);
    out += ")";
    if (!r.counterexample.empty()) out += "\n      counterexample: " + r.counterexample;
    return out;
}

} // namespace ciflin
