#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "roucir/models.hpp"

using namespace roucir;
using models::ModelParams;
using models::Regime;

namespace {

ModelParams base_params() {
    ModelParams p;
    p.y0 = 0.5;
    p.a = 0.25;
    p.b = 1.0;
    p.sigma = 1.0;
    p.epsilon = 0.0;
    p.hurst = 0.5;
    return p;
}

}  // namespace

TEST_CASE("validate accepts the one-degree-of-freedom critical parameters") {
    const auto v = models::validate(base_params());
    CHECK(v.derived.p == 0.0);
    CHECK(v.derived.d == 1.0);
    CHECK(v.derived.regime == Regime::Critical);
    CHECK(v.params.x0() == 0.25);
}

TEST_CASE("validate computes supercritical derived quantities") {
    auto p = base_params();
    p.a = 0.5;
    const auto v = models::validate(p);
    CHECK(v.derived.p == doctest::Approx(0.25));
    CHECK(v.derived.regime == Regime::Supercritical);
    CHECK(v.derived.d == doctest::Approx(2.0));
}

TEST_CASE("validate names each violated constraint") {
    auto p = base_params();
    p.b = 0.0;
    CHECK_THROWS_WITH_AS(models::validate(p),
                         doctest::Contains("MeanReversionNonpositive"),
                         models::ValidationError);

    p = base_params();
    p.y0 = 0.0;
    p.sigma = -1.0;
    p.hurst = 0.4;
    try {
        models::validate(p);
        FAIL("expected ValidationError");
    } catch (const models::ValidationError& e) {
        CHECK(e.violations().size() == 3);
        CHECK(std::string(e.what()).find("InitialValueNonpositive") != std::string::npos);
        CHECK(std::string(e.what()).find("VolatilityNonpositive") != std::string::npos);
        CHECK(std::string(e.what()).find("HurstOutOfRange") != std::string::npos);
    }
}

TEST_CASE("validate is idempotent and side-effect free") {
    const auto p = base_params();
    const auto v1 = models::validate(p);
    const auto v2 = models::validate(p);
    CHECK(v1.derived.p == v2.derived.p);
    CHECK(v1.derived.d == v2.derived.d);
    CHECK(v1.params.y0 == p.y0);
}

TEST_CASE("regime classification is exact") {
    auto p = base_params();
    p.a = 0.3;
    CHECK(models::regime(p) == Regime::Supercritical);
    p.a = 0.25;
    CHECK(models::regime(p) == Regime::Critical);
    p.a = 0.1;
    CHECK(models::regime(p) == Regime::Subcritical);
    p.a = 0.2500000001;  // no tolerance band around the critical point
    CHECK(models::regime(p) == Regime::Supercritical);
}

TEST_CASE("is_nondecreasing") {
    const std::vector<double> up{0.0, 0.0, 0.1, 0.2};
    const std::vector<double> down{0.0, 0.1, 0.05};
    CHECK(models::is_nondecreasing(up));
    CHECK(!models::is_nondecreasing(down));
    CHECK(models::is_nondecreasing(down, 0.1));
}

TEST_CASE("config parsing reads every key and applies defaults") {
    std::istringstream in(
        "# experiment setup\n"
        "y0 = 0.25\n"
        "a = 0.0\n"
        "b = 1.0\n"
        "sigma = 1.0\n"
        "epsilon = 0.0001\n"
        "hurst = 0.7\n"
        "T = 5\n"
        "n_steps = 5000\n"
        "seed = 42\n"
        "replications = 3\n");
    const auto config = models::parse_config(in);
    CHECK(config.params.y0 == 0.25);
    CHECK(config.params.epsilon == 0.0001);
    CHECK(config.params.hurst == 0.7);
    CHECK(config.horizon == 5.0);
    CHECK(config.n_steps == 5000);
    CHECK(config.seed == 42);
    CHECK(config.replications == 3);

    std::istringstream empty("");
    const auto defaults = models::parse_config(empty);
    CHECK(defaults.horizon == 5.0);
    CHECK(defaults.n_steps == 5000);
    CHECK(defaults.replications == 1);
}

TEST_CASE("config parsing rejects malformed input by name") {
    std::istringstream unknown("y0 = 0.25\nvol = 2\n");
    CHECK_THROWS_WITH_AS(models::parse_config(unknown), doctest::Contains("vol"),
                         models::ConfigError);

    std::istringstream dup("a = 1\na = 2\n");
    CHECK_THROWS_WITH_AS(models::parse_config(dup), doctest::Contains("duplicate"),
                         models::ConfigError);

    std::istringstream bad_number("sigma = fast\n");
    CHECK_THROWS_WITH_AS(models::parse_config(bad_number), doctest::Contains("sigma"),
                         models::ConfigError);

    std::istringstream no_eq("sigma 2\n");
    CHECK_THROWS_AS(models::parse_config(no_eq), models::ConfigError);

    CHECK_THROWS_AS(models::parse_config_file("/nonexistent/config"), models::ConfigError);
}

TEST_CASE("config echo round-trips") {
    models::SimulationConfig config;
    config.params = base_params();
    config.params.epsilon = 1e-4;
    config.horizon = 2.5;
    config.n_steps = 1234;
    config.seed = 99;
    config.replications = 2;
    std::istringstream in(models::write_config(config));
    const auto parsed = models::parse_config(in);
    CHECK(parsed.params.y0 == config.params.y0);
    CHECK(parsed.params.epsilon == config.params.epsilon);
    CHECK(parsed.horizon == config.horizon);
    CHECK(parsed.n_steps == config.n_steps);
    CHECK(parsed.seed == config.seed);
    CHECK(parsed.replications == config.replications);
}
