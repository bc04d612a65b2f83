#include <cmath>

#include "doctest.h"
#include "qre/resource.hpp"
#include "qre/trotter.hpp"

using namespace qre;

TEST_CASE("product-formula phase estimation cost stays symbolic end to end") {
    TrotterQPESymbols s;
    TrotterCostReport rep = trotter_qpe_t_cost(s);

    SUBCASE("structural equality with the closed-form expression") {
        SymExpr per_unit = SymExpr::pow(s.delta_ts / s.xi, SymExpr::integer(-1) / s.p);
        SymExpr n_r = SymExpr::integer(2) * s.L * s.L +
                      SymExpr::integer(6) * SymExpr::floor(s.L * s.L / SymExpr::integer(2));
        SymExpr steps = SymExpr::real(0.76) * SymExpr::pi() / s.delta_pe * per_unit;
        SymExpr per_rotation = rotation_t_cost(s.delta_ht / (n_r * per_unit));
        SymExpr target =
            steps * n_r * per_rotation +
            steps * SymExpr::integer(24) * SymExpr::floor(s.L * s.L / SymExpr::integer(2));
        CHECK(rep.t_cost.key() == target.key());
    }
    SUBCASE("numeric agreement on sample operating points") {
        std::map<std::string, double> at{{"L", 8},         {"p", 2},          {"xi", 1.0},
                                         {"Delta_TS", 0.1}, {"Delta_PE", 0.1}, {"Delta_HT", 1e-3}};
        double v = rep.t_cost.evaluate_double(at);
        // hand evaluation of the closed form
        double per_unit = std::pow(0.1, -0.5);
        double n_r = 2 * 64 + 6 * 32;
        double steps = 0.76 * M_PI / 0.1 * per_unit;
        double ceil_term = std::ceil(1.149 * std::log2(n_r * per_unit / 1e-3) + 9.2);
        double expect = steps * (n_r * ceil_term + 24 * 32);
        CHECK(v == doctest::Approx(expect).epsilon(1e-12));
        CHECK(v > 0);
    }
    SUBCASE("rotation count and leading scaling") {
        SymExpr l = SymExpr::integer(10);
        CHECK(TrotterStep::rotations_per_step(l).evaluate_double({}) == 2 * 100 + 6 * 50);
        // the cost diverges as the phase-estimation error tightens
        std::map<std::string, double> a{{"L", 4},          {"p", 2},          {"xi", 1.0},
                                        {"Delta_TS", 0.1}, {"Delta_PE", 1e-2}, {"Delta_HT", 1e-3}};
        std::map<std::string, double> b = a;
        b["Delta_PE"] = 1e-3;
        CHECK(rep.t_cost.evaluate_double(b) ==
              doctest::Approx(10.0 * rep.t_cost.evaluate_double(a)).epsilon(1e-9));
    }
    SUBCASE("free symbols are exactly the six knobs") {
        std::set<std::string> free;
        rep.t_cost.free_symbols(free);
        CHECK(free == std::set<std::string>{"Delta_HT", "Delta_PE", "Delta_TS", "L", "p", "xi"});
    }
}
