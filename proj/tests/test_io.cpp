#include "doctest.h"

#include "rotsync/fixtures.hpp"
#include "rotsync/io.hpp"
#include "support/generators.hpp"

#include <filesystem>
#include <fstream>

using namespace rotsync;
using io::json;

namespace {

bool same_lifts(const Homeo& f, const Homeo& g)
{
    for (int i = -64; i <= 64; ++i) {
        double x = i / 37.0;
        if (f.lift(x) != g.lift(x))
            return false;
    }
    return true;
}

std::filesystem::path scratch_dir(const char* name)
{
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("primitive maps parse")
{
    auto r = io::homeo_from_json(json::parse(R"({"kind": "rotation", "alpha": 0.25})"));
    CHECK(r.lift(0.5) == 0.75);
    auto m = io::homeo_from_json(json::parse(R"({"kind": "moebius", "matrix": [[1, 2], [0, 1]]})"));
    CHECK(m.lift(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    auto p = io::homeo_from_json(json::parse(R"({"kind": "pl", "breakpoints": [[0, 0], [0.5, 0.25]]})"));
    CHECK(p.lift(0.5) == doctest::Approx(0.25));
    auto s = io::homeo_from_json(json::parse(R"({"kind": "rotation", "alpha": 0.25, "shift": 2})"));
    CHECK(s.lift(0.0) == 2.25);
    CHECK(same_lifts(io::homeo_from_json("bundled_conjugator"), fixtures::bundled_conjugator()));
}

TEST_CASE("malformed maps are config errors")
{
    const char* bad[] = {
        R"({"kind": "pl", "breakpoints": [[0, 0.5], [0.5, 0.2], [0.7, 0.9]]})",
        R"({"kind": "pl", "breakpoints": [[0, 0, 1]]})",
        R"({"kind": "moebius", "matrix": [[1, 1], [1, 1]]})",
        R"({"kind": "moebius", "matrix": [1, 0, 0, 1]})",
        R"({"kind": "rotation"})",
        R"({"kind": "rotation", "alpha": "x"})",
        R"({"kind": "spiral"})",
        R"({"kind": "cover", "l": 0, "of": {"kind": "rotation", "alpha": 0.1}})",
        R"({"kind": "word", "generators": [{"kind": "rotation", "alpha": 0.1}], "word": [1]})",
        R"({"kind": "rotation", "alpha": 0.1, "shift": 0.5})",
        R"("nothing")",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(io::homeo_from_json(json::parse(text)), io::ConfigError);
    }
}

TEST_CASE("map round trip preserves lifts exactly")
{
    Rng rng(derive_seed(41, 0));
    for (int t = 0; t < 200; ++t) {
        Homeo h = testing::random_homeo(rng, 3);
        json j = io::to_json(h);
        Homeo back = io::homeo_from_json(json::parse(j.dump()));
        CAPTURE(j.dump());
        CHECK(same_lifts(h, back));
    }
}

TEST_CASE("systems parse from names, objects and modifiers")
{
    auto g = io::system_from_json("generic");
    CHECK(g.size() == 2);
    auto c = io::system_from_json(json::parse(R"({"fixture": "generic", "cover": 2})"));
    CHECK(same_lifts(c.generator(1), fixtures::generic_cover(2).generator(1)));
    auto k = io::system_from_json(json::parse(R"({"fixture": "generic", "conjugated_by": "bundled_conjugator"})"));
    CHECK(same_lifts(k.generator(1), g.generator(1).conjugated_by(fixtures::bundled_conjugator())));
    auto u = io::system_from_json(json::parse(R"({"generators": [{"kind": "rotation", "alpha": 0.1},
                                                                   {"kind": "rotation", "alpha": 0.2}]})"));
    CHECK(u.nu() == std::vector<double>{0.5, 0.5});

    CHECK_THROWS_AS(io::system_from_json("nope"), io::ConfigError);
    CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"generators": []})")), io::ConfigError);
    CHECK_THROWS_AS(io::system_from_json(json::parse(
                        R"({"generators": [{"kind": "rotation", "alpha": 0.1}], "nu": [0.4]})")),
                    io::ConfigError);
}

TEST_CASE("bundled fixtures round trip through files")
{
    auto dir = scratch_dir("rotsync_io_fixtures");
    auto names = io::emit_fixtures(dir);
    CHECK(names.size() == fixtures::bundled().size() + 1);
    for (const auto& [name, system] : fixtures::bundled()) {
        auto back = io::system_from_json(io::read_json(dir / (name + ".json")));
        REQUIRE(back.size() == system.size());
        CHECK(back.nu() == system.nu());
        for (std::size_t i = 0; i < system.size(); ++i)
            CHECK(same_lifts(back.generator(i), system.generator(i)));
    }
    // Emitting twice gives identical bytes.
    auto again = scratch_dir("rotsync_io_fixtures_again");
    io::emit_fixtures(again);
    for (const auto& n : names) {
        std::ifstream a(dir / n), b(again / n);
        std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
        CHECK(sa == sb);
    }
}

TEST_CASE("unreadable and unparsable files")
{
    auto dir = scratch_dir("rotsync_io_bad");
    CHECK_THROWS_AS(io::read_json(dir / "missing.json"), io::ConfigError);
    std::ofstream(dir / "broken.json") << "{\"kind\": ";
    CHECK_THROWS_AS(io::read_json(dir / "broken.json"), io::ConfigError);
}

TEST_CASE("table export")
{
    auto dir = scratch_dir("rotsync_io_table");
    auto t = tabulate([](double x) { return x + 0.1; }, CirclePoint(0.0), 4);
    io::write_table_csv(dir / "psi.csv", t);
    std::ifstream in(dir / "psi.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,psi");
    std::getline(in, line);
    CHECK(line == "0,0.10000000000000001");
}
