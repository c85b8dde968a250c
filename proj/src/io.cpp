#include "rotsync/io.hpp"

#include "rotsync/fixtures.hpp"

#include <cstdio>
#include <fstream>

namespace rotsync::io {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double number(const json& j, const char* what)
{
    if (!j.is_number())
        throw ConfigError(std::string(what) + " must be a number");
    return j.get<double>();
}

int positive_int(const json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long>() < 1)
        throw ConfigError(std::string(what) + " must be a positive integer");
    return j.get<int>();
}

Homeo primitive(const json& j)
{
    std::string kind = field(j, "kind").get<std::string>();
    try {
        if (kind == "rotation")
            return Homeo::rotation(number(field(j, "alpha"), "alpha"));
        if (kind == "pl") {
            std::vector<Breakpoint> bps;
            for (const auto& b : field(j, "breakpoints")) {
                if (!b.is_array() || b.size() != 2)
                    throw ConfigError("breakpoints are [point, image] pairs");
                bps.push_back({number(b[0], "breakpoint"), number(b[1], "breakpoint image")});
            }
            return Homeo::piecewise_linear(bps);
        }
        if (kind == "moebius") {
            const json& m = field(j, "matrix");
            if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
                throw ConfigError("matrix must be [[a, b], [c, d]]");
            return Homeo::moebius({number(m[0][0], "matrix entry"), number(m[0][1], "matrix entry"),
                                   number(m[1][0], "matrix entry"), number(m[1][1], "matrix entry")});
        }
        if (kind == "cover")
            return homeo_from_json(field(j, "of")).cover(positive_int(field(j, "l"), "l"));
        if (kind == "quotient")
            return homeo_from_json(field(j, "of")).quotient(positive_int(field(j, "l"), "l"));
        if (kind == "inverse")
            return homeo_from_json(field(j, "of")).inverse();
        if (kind == "conjugate")
            return homeo_from_json(field(j, "of")).conjugated_by(homeo_from_json(field(j, "by")));
        if (kind == "chain") {
            std::vector<Homeo> maps;
            for (const auto& m : field(j, "maps"))
                maps.push_back(homeo_from_json(m));
            return Homeo::chain(std::move(maps));
        }
        if (kind == "word") {
            auto gens = std::make_shared<std::vector<Homeo>>();
            for (const auto& g : field(j, "generators"))
                gens->push_back(homeo_from_json(g));
            std::vector<Letter> letters;
            for (const auto& l : field(j, "word")) {
                if (!l.is_number_unsigned() || l.get<std::size_t>() >= gens->size())
                    throw ConfigError("word letters must index the generators");
                letters.push_back(l.get<Letter>());
            }
            return Homeo::word(std::move(gens), Word(std::move(letters)));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(kind + ": " + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(kind + ": " + e.what());
    }
    throw ConfigError("unknown map kind \"" + kind + "\"");
}

} // namespace

Homeo homeo_from_json(const json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "bundled_conjugator")
            return fixtures::bundled_conjugator();
        throw ConfigError("unknown map name \"" + j.get<std::string>() + "\"");
    }
    Homeo h = primitive(j);
    if (j.contains("shift")) {
        if (!j.at("shift").is_number_integer())
            throw ConfigError("shift must be an integer");
        h = h.shifted(j.at("shift").get<long>());
    }
    return h;
}

json to_json(const Homeo& h)
{
    json j;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, detail::RotationMap>) {
                j = {{"kind", "rotation"}, {"alpha", m.alpha}};
            } else if constexpr (std::is_same_v<T, detail::PiecewiseLinearMap>) {
                json bps = json::array();
                for (const auto& b : m.breakpoints)
                    bps.push_back({b.point, b.image});
                j = {{"kind", "pl"}, {"breakpoints", bps}};
            } else if constexpr (std::is_same_v<T, detail::MoebiusMap>) {
                j = {{"kind", "moebius"}, {"matrix", {{m.m.a, m.m.b}, {m.m.c, m.m.d}}}};
            } else if constexpr (std::is_same_v<T, detail::WordMap>) {
                json gens = json::array();
                for (const auto& g : *m.generators)
                    gens.push_back(to_json(g));
                j = {{"kind", "word"}, {"generators", gens}, {"word", m.word.letters()}};
            } else if constexpr (std::is_same_v<T, detail::ChainMap>) {
                json maps = json::array();
                for (const auto& g : m.maps)
                    maps.push_back(to_json(g));
                j = {{"kind", "chain"}, {"maps", maps}};
            } else if constexpr (std::is_same_v<T, detail::InverseMap>) {
                j = {{"kind", "inverse"}, {"of", to_json(m.of)}};
            } else if constexpr (std::is_same_v<T, detail::CoverMap>) {
                j = {{"kind", "cover"}, {"l", m.l}, {"of", to_json(m.base)}};
            } else {
                j = {{"kind", "quotient"}, {"l", m.l}, {"of", to_json(m.base)}};
            }
        },
        h.node().map);
    if (h.lift_shift() != 0)
        j["shift"] = h.lift_shift();
    return j;
}

GeneratorSystem system_from_json(const json& j)
{
    auto named = [](const std::string& name) {
        for (auto& [n, s] : fixtures::bundled())
            if (n == name)
                return s;
        throw ConfigError("unknown fixture \"" + name + "\"");
    };
    if (j.is_string())
        return named(j.get<std::string>());
    if (!j.is_object())
        throw ConfigError("a system is a fixture name or an object");

    std::optional<GeneratorSystem> system;
    if (j.contains("fixture")) {
        system = named(field(j, "fixture").get<std::string>());
    } else {
        std::vector<Homeo> gens;
        const json& g = field(j, "generators");
        if (!g.is_array() || g.empty())
            throw ConfigError("generators must be a nonempty list");
        for (const auto& m : g)
            gens.push_back(homeo_from_json(m));
        try {
            if (j.contains("nu")) {
                std::vector<double> nu;
                for (const auto& w : j.at("nu"))
                    nu.push_back(number(w, "nu weight"));
                system = GeneratorSystem(std::move(gens), std::move(nu));
            } else {
                system = GeneratorSystem(std::move(gens));
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("nu: ") + e.what());
        }
    }
    if (j.contains("cover"))
        system = lift_cover(*system, positive_int(j.at("cover"), "cover"));
    if (j.contains("conjugated_by"))
        system = system->conjugated_by(homeo_from_json(j.at("conjugated_by")));
    return *system;
}

json to_json(const GeneratorSystem& system)
{
    json gens = json::array();
    for (const auto& g : system.generators())
        gens.push_back(to_json(g));
    return {{"generators", gens}, {"nu", system.nu()}};
}

json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void write_table_csv(const std::filesystem::path& path, const ConjugacyTable& table)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << "x,psi\n";
    char buf[64];
    for (std::size_t i = 0; i < table.table.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", table.table.x[i], table.table.y[i]);
        out << buf;
    }
}

std::vector<std::string> emit_fixtures(const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::string> names;
    for (const auto& [name, system] : fixtures::bundled()) {
        write_json(dir / (name + ".json"), to_json(system));
        names.push_back(name + ".json");
    }
    write_json(dir / "bundled_conjugator.json", to_json(fixtures::bundled_conjugator()));
    names.push_back("bundled_conjugator.json");
    return names;
}

} // namespace rotsync::io
