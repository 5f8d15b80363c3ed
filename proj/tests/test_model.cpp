#include <doctest.h>

#include "ciflin/errors.hpp"
#include "ciflin/generator.hpp"
#include "ciflin/parser.hpp"

#include "testutil.hpp"

using namespace ciflin;

namespace {

const char* kGateOnly = R"(
domain n : int 0..2;
domain wq : list int 0..1 maxlen 2;
domain id : int 0..1;
domain p : int 0..1;
actions rq, go, out;

automaton Gate {
  sync rq, go, out;
  location C {
    initial when wq == [];
    invariant n == 0;
    edge rq when wq' == wq ++ [id'] goto C;
    edge go when [p'] ++ wq' == wq goto O;
  }
  location O {
    invariant n <= 1;
    edge out goto C;
    edge rq when wq' == wq ++ [id'] goto O;
  }
}
)";

} // namespace

TEST_CASE("parse_model: the gate") {
    Model m = parse_model(kGateOnly);
    REQUIRE(m.automata.size() == 1);
    const Automaton& g = *m.automata[0];
    CHECK(g.name == "Gate");
    CHECK(g.locations == std::vector<std::string>{"C", "O"});
    CHECK(g.edges.size() == 4);
    CHECK(g.sync_actions == std::set<std::string>{"rq", "go", "out"});
    CHECK(g.init_of("O")->kind == Pred::Kind::False);
    CHECK(to_string(g.init_of("C")) == "wq == []");
    CHECK(to_string(g.inv_of("O")) == "n <= 1");
    // No composition statement: the sole automaton is the composition.
    CHECK(m.composition->kind == Comp::Kind::Atom);
}

TEST_CASE("parse_model: minimal automaton") {
    Model m = parse_model("automaton A { location L { initial; } }");
    REQUIRE(m.automata.size() == 1);
    const Automaton& a = *m.automata[0];
    CHECK(a.locations == std::vector<std::string>{"L"});
    CHECK(a.init_of("L")->kind == Pred::Kind::True);
    CHECK(a.inv_of("L")->kind == Pred::Kind::True);
    CHECK(a.edges.empty());
    CHECK(a.sync_actions.empty());
}

TEST_CASE("parse_model: diagnostics carry positions") {
    SUBCASE("duplicate automaton name") {
        try {
            parse_model("automaton A { location L { initial; } }\n"
                        "automaton A { location L { initial; } }\n"
                        "composition Main = A || A;");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("duplicate automaton") != std::string::npos);
        }
    }
    SUBCASE("undeclared variable") {
        try {
            parse_model("automaton A { location L { initial when z == 0; } }");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
            CHECK(e.col > 1);
        }
    }
    SUBCASE("tau in sync set") {
        CHECK_THROWS_AS(parse_model("actions a;\n"
                                    "automaton A { sync tau; location L { initial; } }"),
                        ParseError);
    }
    SUBCASE("undeclared action on an edge") {
        CHECK_THROWS_AS(parse_model("automaton A { location L { initial; edge b goto L; } }"),
                        ParseError);
    }
    SUBCASE("automaton used twice in a composition") {
        CHECK_THROWS_AS(parse_model("automaton A { location L { initial; } }\n"
                                    "composition Main = A || A;"),
                        ParseError);
    }
    SUBCASE("primed variable outside a reset") {
        CHECK_THROWS_AS(parse_model("domain x : int 0..1;\n"
                                    "automaton A { location L { initial when x' == 0; } }"),
                        ParseError);
    }
    SUBCASE("kind mismatch") {
        CHECK_THROWS_AS(parse_model("domain x : int 0..1;\n"
                                    "domain b : bool;\n"
                                    "automaton A { location L { initial when x == b; } }"),
                        ParseError);
    }
    SUBCASE("syntax error position") {
        try {
            parse_model("domain x : int 0..;\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
            CHECK(e.col == 19);  // points at ';' where an integer was expected
        }
    }
}

TEST_CASE("print_model round-trips") {
    SUBCASE("gate") {
        Model m = parse_model(kGateOnly);
        Model again = parse_model(print_model(m));
        CHECK(model_struct_eq(m, again));
    }
    SUBCASE("full train-gate") {
        Model m = testutil::traingate();
        Model again = parse_model(print_model(m));
        CHECK(model_struct_eq(m, again));
        CHECK(print_model(m) == print_model(again));
    }
    SUBCASE("edge-free automaton") {
        Model m = parse_model("automaton A { location L { initial; } }");
        CHECK(model_struct_eq(m, parse_model(print_model(m))));
    }
    SUBCASE("generated models") {
        GenParams params;
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            Model m = generate_model(seed, params);
            Model again = parse_model(print_model(m));
            CAPTURE(seed);
            CHECK(model_struct_eq(m, again));
        }
    }
}

TEST_CASE("automata_of flattens left-to-right") {
    Model m = testutil::traingate();
    auto autos = automata_of(m.composition);
    REQUIRE(autos.size() == 3);
    CHECK(autos[0]->name == "Train0");
    CHECK(autos[1]->name == "Train1");
    CHECK(autos[2]->name == "Gate");

    AutomatonPtr gate = m.find_automaton("Gate");
    CHECK(automata_of(Comp::mk_atom(gate)).size() == 1);

    auto a = m.find_automaton("Train0");
    auto b = m.find_automaton("Train1");
    CompPtr nested = Comp::mk_par(Comp::mk_atom(a), Comp::mk_par(Comp::mk_atom(b),
                                                                 Comp::mk_atom(gate)));
    auto flat = automata_of(nested);
    CHECK(flat[0]->name == "Train0");
    CHECK(flat[1]->name == "Train1");
    CHECK(flat[2]->name == "Gate");
}

TEST_CASE("reinit replaces init maps and nothing else") {
    Model m = testutil::traingate();
    CompPtr r = reinit(m.composition, {"N", "F", "C"});
    auto autos = automata_of(r);
    CHECK(autos[0]->init_of("N")->kind == Pred::Kind::True);
    CHECK(autos[0]->init_of("F")->kind == Pred::Kind::False);
    CHECK(autos[0]->init_of("S")->kind == Pred::Kind::False);
    CHECK(autos[2]->init_of("C")->kind == Pred::Kind::True);

    auto before = automata_of(m.composition);
    for (std::size_t i = 0; i < autos.size(); ++i) {
        CHECK(autos[i]->name == before[i]->name);
        CHECK(autos[i]->locations == before[i]->locations);
        CHECK(autos[i]->sync_actions == before[i]->sync_actions);
        REQUIRE(autos[i]->edges.size() == before[i]->edges.size());
        for (std::size_t k = 0; k < autos[i]->edges.size(); ++k) {
            CHECK(autos[i]->edges[k].src == before[i]->edges[k].src);
            CHECK(struct_eq(autos[i]->edges[k].reset, before[i]->edges[k].reset));
        }
        for (const auto& loc : autos[i]->locations)
            CHECK(struct_eq(autos[i]->inv_of(loc), before[i]->inv_of(loc)));
    }

    SUBCASE("idempotent on the same vector") {
        AutomatonPtr gate = m.find_automaton("Gate");
        CompPtr once = reinit(Comp::mk_atom(gate), {"C"});
        CompPtr twice = reinit(once, {"C"});
        CHECK(comp_struct_eq(once, twice));
    }
    SUBCASE("length mismatch") {
        AutomatonPtr gate = m.find_automaton("Gate");
        CHECK_THROWS_AS(reinit(Comp::mk_atom(gate), {"C", "O"}), ModelError);
        CHECK_THROWS_AS(reinit(m.composition, {"N", "F", "Z"}), ModelError);
    }
}

TEST_CASE("composition printing round-trips the tree shape") {
    Model m = testutil::traingate();
    CHECK(comp_to_string(m.composition) ==
          "sync {go, out, rq} (Train0 || Train1) || Gate");
}
