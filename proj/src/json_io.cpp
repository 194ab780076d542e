#include "sparsetrace/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sparsetrace {

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    return Rational::parse(j.get<std::string>());
}

json to_json(const ParamReport& r) {
    return json{{"a", r.params.a},       {"b", r.params.b},
                {"c", r.params.c},       {"d", r.params.d},
                {"e", r.e},              {"h", r.h},
                {"epsilon", r.epsilon.str()}, {"bcbound_ok", r.bcbound_ok},
                {"dbound_ok", r.dbound_ok},   {"t3_ok", r.t3_ok}};
}

json to_json(const Pattern2D& p) {
    json rows = json::array();
    for (std::int64_t y = 0; y < p.height(); ++y) {
        json row = json::array();
        for (std::int64_t x = 0; x < p.width(); ++x) row.push_back(p.at(x, y).code());
        rows.push_back(std::move(row));
    }
    return json{{"width", p.width()}, {"height", p.height()}, {"rows", std::move(rows)}};
}

Pattern2D pattern_from_json(const json& j) {
    Pattern2D p(j.at("width").get<std::int64_t>(), j.at("height").get<std::int64_t>());
    const auto& rows = j.at("rows");
    for (std::int64_t y = 0; y < p.height(); ++y)
        for (std::int64_t x = 0; x < p.width(); ++x)
            p.at(x, y) = Tile::from_code(rows.at((size_t)y).at((size_t)x).get<std::string>());
    return p;
}

namespace {

template <typename Sym, typename CodeFn>
json config_to_json(const Config3D<Sym>& c, const char* alphabet, CodeFn code) {
    json cells = json::array();
    for (const auto& [p, s] : c.cells())
        cells.push_back(json{{"x", p.x}, {"y", p.y}, {"z", p.z}, {"sym", code(s)}});
    return json{{"alphabet", alphabet}, {"cells", std::move(cells)}};
}

} // namespace

json to_json(const TileConfig& c) {
    return config_to_json(c, "tile", [](const Tile& t) { return t.code(); });
}
json to_json(const DeltaConfig& c) {
    return config_to_json(c, "delta", [](DeltaSymbol d) { return delta_code(d); });
}
json to_json(const BitConfig& c) {
    return config_to_json(c, "bit", [](bool) { return std::string("1"); });
}

ConfigKind config_kind(const json& j) {
    std::string a = j.at("alphabet").get<std::string>();
    if (a == "tile") return ConfigKind::Tile;
    if (a == "delta") return ConfigKind::Delta;
    if (a == "bit") return ConfigKind::Bit;
    throw std::invalid_argument("unknown configuration alphabet: " + a);
}

TileConfig tile_config_from_json(const json& j) {
    TileConfig c;
    for (const auto& cell : j.at("cells"))
        c.set(Vec3{cell.at("x"), cell.at("y"), cell.at("z")},
              Tile::from_code(cell.at("sym").get<std::string>()));
    return c;
}

DeltaConfig delta_config_from_json(const json& j) {
    DeltaConfig c;
    for (const auto& cell : j.at("cells"))
        c.set(Vec3{cell.at("x"), cell.at("y"), cell.at("z")},
              delta_from_code(cell.at("sym").get<std::string>()));
    return c;
}

BitConfig bit_config_from_json(const json& j) {
    BitConfig c;
    for (const auto& cell : j.at("cells"))
        c.set(Vec3{cell.at("x"), cell.at("y"), cell.at("z")}, true);
    return c;
}

json to_json(const Mat& m) {
    json runs = json::array();
    for (const auto& r : m.runs) {
        json strings = json::array();
        for (const auto& s : r.strings) {
            json pts = json::array();
            for (const auto& [y, z] : s.points()) pts.push_back(json::array({y.str(), z.str()}));
            strings.push_back(std::move(pts));
        }
        runs.push_back(
            json{{"x_lo", r.x_lo.str()}, {"x_hi", r.x_hi.str()}, {"strings", std::move(strings)}});
    }
    json splits = json::array();
    for (const auto& s : m.combo_splits) splits.push_back(s.str());
    return json{{"y_domain", json::array({m.y_lo.str(), m.y_hi.str()})},
                {"x_end", m.x_end.str()},
                {"y_end", m.y_end.str()},
                {"combo_splits", std::move(splits)},
                {"runs", std::move(runs)}};
}

Mat mat_from_json(const json& j) {
    Mat m;
    m.y_lo = rational_from_json(j.at("y_domain").at(0));
    m.y_hi = rational_from_json(j.at("y_domain").at(1));
    m.x_end = rational_from_json(j.at("x_end"));
    m.y_end = rational_from_json(j.at("y_end"));
    for (const auto& s : j.value("combo_splits", json::array()))
        m.combo_splits.push_back(rational_from_json(s));
    for (const auto& r : j.at("runs")) {
        MatRun run{rational_from_json(r.at("x_lo")), rational_from_json(r.at("x_hi")), {}};
        for (const auto& s : r.at("strings")) {
            std::vector<PLFunction::Point> pts;
            for (const auto& p : s)
                pts.emplace_back(rational_from_json(p.at(0)), rational_from_json(p.at(1)));
            run.strings.push_back(PLFunction(std::move(pts)));
        }
        m.runs.push_back(std::move(run));
    }
    m.validate();
    return m;
}

json to_json(const UnborderedCode& c) { return json{{"k", c.k}, {"words", c.words}}; }

UnborderedCode code_from_json(const json& j) {
    UnborderedCode c;
    c.k = j.at("k").get<std::int64_t>();
    c.words = j.at("words").get<std::vector<std::string>>();
    return c;
}

json to_json(const OverlayWitness& w, const std::vector<Patch>& patches) {
    json placements = json::array();
    for (const auto& pl : w.placements)
        placements.push_back(json{{"patch_id", patches[pl.patch].id},
                                  {"offset", json::array({pl.offset.x, pl.offset.y, pl.offset.z})}});
    return json{{"placements", std::move(placements)},
                {"column", json{{"x", w.col_x}, {"y", w.col_y}}},
                {"count", w.count},
                {"candidate_index", w.candidate_index}};
}

json to_json(const wang::CubePatch& p) {
    json cubes = json::array();
    for (const auto& [pos, cube] : p.cubes) {
        json faces = json::array();
        for (const auto& f : cube.faces) faces.push_back(f.str());
        cubes.push_back(json{{"x", pos.x}, {"y", pos.y}, {"z", pos.z}, {"faces", std::move(faces)}});
    }
    return json{{"cubes", std::move(cubes)}};
}

wang::CubePatch cube_patch_from_json(const json& j) {
    wang::CubePatch p;
    for (const auto& c : j.at("cubes")) {
        wang::WangCube cube;
        const auto& faces = c.at("faces");
        for (size_t f = 0; f < 6; ++f) {
            std::string s = faces.at(f).get<std::string>();
            if (s == "0") cube.faces[f] = wang::FaceColor{true, 0};
            else cube.faces[f] = wang::FaceColor{false, std::stoull(s, nullptr, 16)};
        }
        p.cubes.emplace(Vec3{c.at("x"), c.at("y"), c.at("z")}, cube);
    }
    return p;
}

std::string export_obj(const Surface& s, int precision) {
    std::ostringstream os;
    std::map<std::string, size_t> vertex_ids;
    std::vector<std::string> vertices;
    auto vertex = [&](const Rational& x, const Rational& y, const Rational& z) {
        std::string key = x.decimal(precision) + " " + y.decimal(precision) + " " +
                          z.decimal(precision);
        auto [it, fresh] = vertex_ids.emplace(key, vertices.size() + 1);
        if (fresh) vertices.push_back(key);
        return it->second;
    };
    std::vector<std::array<size_t, 4>> faces;
    for (const auto& [p, t] : s.config.cells()) {
        Rational x0(p.x), x1(p.x + 1), y0(p.y), y1(p.y + 1);
        Rational zs(p.z), zn(p.z + slope_value(t.slope));
        faces.push_back({vertex(x0, y0, zs), vertex(x1, y0, zs), vertex(x1, y1, zn),
                         vertex(x0, y1, zn)});
    }
    os << "# surface export: " << s.config.size() << " cells\n";
    for (const auto& v : vertices) os << "v " << v << "\n";
    for (const auto& f : faces)
        os << "f " << f[0] << " " << f[1] << " " << f[2] << " " << f[3] << "\n";
    return os.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

} // namespace sparsetrace
