#include "lip/io.hpp"

#include <fstream>

using nlohmann::json;

namespace lip {

namespace {

Rational rat(const json& j, const char* what) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_float())
        throw ValidationError(std::string(what) +
                              ": binary floats are not accepted; use decimal strings");
    throw ValidationError(std::string(what) + ": expected integer or string rational");
}

json rat_json(const Rational& r) {
    if (denominator(r) == 1) {
        BigInt num = numerator(r);
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max())
            return static_cast<std::int64_t>(num);
    }
    return format_rational(r);
}

std::vector<Rational> rat_vector(const json& j, const char* what) {
    std::vector<Rational> out;
    for (const auto& v : j) out.push_back(rat(v, what));
    return out;
}

json rat_vector_json(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(rat_json(r));
    return out;
}

std::vector<std::vector<std::vector<int>>> parse_strategies(const json& j) {
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& player : j) {
        std::vector<std::vector<int>> list;
        for (const auto& strat : player) list.push_back(strat.get<std::vector<int>>());
        out.push_back(std::move(list));
    }
    return out;
}

CongestionModel parse_congestion(const json& doc) {
    CongestionModel model;
    model.n = doc.at("players").get<int>();
    model.m = doc.at("facilities").get<int>();
    model.strategies = parse_strategies(doc.at("strategies"));

    const json& cost = doc.at("cost");
    std::string type = cost.at("type").get<std::string>();
    if (type == "load_table") {
        LoadTableCost c;
        for (const auto& table : cost.at("tables"))
            c.tables.push_back(rat_vector(table, "load table"));
        model.cost = std::move(c);
    } else if (type == "set_oracle") {
        SetOracleCost c;
        for (const auto& table : cost.at("tables")) {
            std::map<PlayerSet, Rational> entries;
            for (const auto& [key, value] : table.items())
                entries[static_cast<PlayerSet>(std::stoul(key))] =
                    rat(value, "set oracle");
            c.tables.push_back(std::move(entries));
        }
        model.cost = std::move(c);
    } else if (type == "interference") {
        InterferenceCost c;
        for (const auto& e : cost.at("edges"))
            c.edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                               rat(e.at("weight"), "edge weight")});
        model.cost = std::move(c);
    } else {
        throw ValidationError("unknown cost type: " + type);
    }
    model.validate();
    return model;
}

json strategies_json(const std::vector<std::vector<std::vector<int>>>& strategies) {
    json out = json::array();
    for (const auto& player : strategies) {
        json list = json::array();
        for (const auto& strat : player) list.push_back(strat);
        out.push_back(std::move(list));
    }
    return out;
}

json congestion_cost_json(const CongestionModel& model) {
    json cost;
    if (const auto* lt = std::get_if<LoadTableCost>(&model.cost)) {
        cost["type"] = "load_table";
        cost["tables"] = json::array();
        for (const auto& t : lt->tables) cost["tables"].push_back(rat_vector_json(t));
    } else if (const auto* so = std::get_if<SetOracleCost>(&model.cost)) {
        cost["type"] = "set_oracle";
        cost["tables"] = json::array();
        for (const auto& t : so->tables) {
            json entries = json::object();
            for (const auto& [mask, value] : t)
                entries[std::to_string(mask)] = rat_json(value);
            cost["tables"].push_back(std::move(entries));
        }
    } else {
        const auto& ic = std::get<InterferenceCost>(model.cost);
        cost["type"] = "interference";
        cost["edges"] = json::array();
        for (const auto& e : ic.edges)
            cost["edges"].push_back(
                {{"u", e.u}, {"v", e.v}, {"weight", rat_json(e.weight)}});
    }
    return cost;
}

int vertex_index(const std::vector<std::string>& vertices, const std::string& name) {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end()) throw ValidationError("unknown vertex: " + name);
    return static_cast<int>(it - vertices.begin());
}

RoutingInstance parse_routing(const json& doc) {
    RoutingInstance inst;
    inst.vertices = doc.at("vertices").get<std::vector<std::string>>();
    inst.n = doc.at("players").get<int>();
    inst.source = vertex_index(inst.vertices, doc.at("source").get<std::string>());
    inst.sink = vertex_index(inst.vertices, doc.at("sink").get<std::string>());
    if (doc.contains("cost_bound")) inst.cost_bound = rat(doc["cost_bound"], "bound");
    for (const auto& arc : doc.at("arcs")) {
        RoutingInstance::Arc a;
        a.tail = vertex_index(inst.vertices, arc.at("tail").get<std::string>());
        a.head = vertex_index(inst.vertices, arc.at("head").get<std::string>());
        a.table = rat_vector(arc.at("costs"), "arc cost");
        inst.arcs.push_back(std::move(a));
    }
    if (inst.cost_bound <= 0)
        for (const auto& arc : inst.arcs)
            for (const auto& c : arc.table)
                inst.cost_bound = std::max(inst.cost_bound, c);
    inst.validate(/*require_convex=*/false);
    return inst;
}

SplittableInstance parse_splittable(const json& doc) {
    SplittableInstance inst;
    inst.n = doc.at("players").get<int>();
    inst.m = doc.at("facilities").get<int>();
    inst.strategies = parse_strategies(doc.at("strategies"));
    inst.demands = rat_vector(doc.at("demands"), "demand");
    for (const auto& table : doc.at("costs")) {
        PiecewiseLinear c;
        for (const auto& point : table)
            c.points.push_back(
                {rat(point.at(0), "breakpoint load"), rat(point.at(1), "breakpoint cost")});
        inst.costs.push_back(std::move(c));
    }
    if (doc.contains("cost_bound"))
        inst.cost_bound = rat(doc["cost_bound"], "bound");
    else
        for (const auto& c : inst.costs)
            inst.cost_bound = std::max(inst.cost_bound, c.max_value());
    inst.validate(/*require_convex=*/false);
    return inst;
}

}  // namespace

FiniteGame NormalFormGame::build() const {
    std::int64_t total = 1;
    for (int c : strategy_counts) {
        if (c < 1) throw ValidationError("strategy counts must be positive");
        total *= c;
    }
    if (static_cast<std::int64_t>(cost_table.size()) != total)
        throw ValidationError("cost table must have one row per profile");
    for (const auto& row : cost_table)
        if (row.size() != strategy_counts.size())
            throw ValidationError("cost rows must have one entry per player");

    auto counts = strategy_counts;
    auto table = cost_table;
    return FiniteGame(counts, [counts, table](const Profile& x) {
        std::int64_t r = 0;
        for (std::size_t i = 0; i < counts.size(); ++i)
            r = r * counts[i] + x.choices[i];
        return table[r];
    });
}

GameFile parse_game_file(const json& doc) {
    GameFile file;
    file.kind = doc.at("kind").get<std::string>();
    if (file.kind == "normal_form") {
        NormalFormGame game;
        game.strategy_counts = doc.at("strategy_counts").get<std::vector<int>>();
        for (const auto& row : doc.at("cost_table"))
            game.cost_table.push_back(rat_vector(row, "cost"));
        game.build();  // validates
        file.normal_form = std::move(game);
    } else if (file.kind == "congestion") {
        file.congestion = parse_congestion(doc);
    } else if (file.kind == "scheduling") {
        std::vector<std::vector<Rational>> times;
        for (const auto& row : doc.at("processing_times"))
            times.push_back(rat_vector(row, "processing time"));
        file.scheduling_times = times;
        file.congestion = make_scheduling(times);
    } else if (file.kind == "interference") {
        int players = doc.at("players").get<int>();
        int stations = doc.at("stations").get<int>();
        std::vector<InterferenceCost::Edge> edges;
        for (const auto& e : doc.at("edges"))
            edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                             rat(e.at("weight"), "edge weight")});
        file.congestion = make_interference(players, stations, std::move(edges));
    } else if (file.kind == "routing") {
        file.routing = parse_routing(doc);
    } else if (file.kind == "splittable") {
        file.splittable = parse_splittable(doc);
    } else {
        throw ValidationError("unknown game kind: " + file.kind);
    }
    return file;
}

GameFile load_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open game file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    return parse_game_file(doc);
}

json to_json(const GameFile& file) {
    json doc;
    doc["kind"] = file.kind;
    if (file.kind == "normal_form") {
        doc["strategy_counts"] = file.normal_form->strategy_counts;
        doc["cost_table"] = json::array();
        for (const auto& row : file.normal_form->cost_table)
            doc["cost_table"].push_back(rat_vector_json(row));
    } else if (file.kind == "congestion") {
        const auto& model = *file.congestion;
        doc["players"] = model.n;
        doc["facilities"] = model.m;
        doc["strategies"] = strategies_json(model.strategies);
        doc["cost"] = congestion_cost_json(model);
    } else if (file.kind == "scheduling") {
        doc["processing_times"] = json::array();
        for (const auto& row : *file.scheduling_times)
            doc["processing_times"].push_back(rat_vector_json(row));
    } else if (file.kind == "interference") {
        const auto& model = *file.congestion;
        doc["players"] = model.n;
        doc["stations"] = model.m;
        doc["edges"] = json::array();
        for (const auto& e : std::get<InterferenceCost>(model.cost).edges)
            doc["edges"].push_back(
                {{"u", e.u}, {"v", e.v}, {"weight", rat_json(e.weight)}});
    } else if (file.kind == "routing") {
        const auto& inst = *file.routing;
        doc["vertices"] = inst.vertices;
        doc["players"] = inst.n;
        doc["source"] = inst.vertices[inst.source];
        doc["sink"] = inst.vertices[inst.sink];
        doc["cost_bound"] = rat_json(inst.cost_bound);
        doc["arcs"] = json::array();
        for (const auto& a : inst.arcs)
            doc["arcs"].push_back({{"tail", inst.vertices[a.tail]},
                                   {"head", inst.vertices[a.head]},
                                   {"costs", rat_vector_json(a.table)}});
    } else if (file.kind == "splittable") {
        const auto& inst = *file.splittable;
        doc["players"] = inst.n;
        doc["facilities"] = inst.m;
        doc["strategies"] = strategies_json(inst.strategies);
        doc["demands"] = rat_vector_json(inst.demands);
        doc["cost_bound"] = rat_json(inst.cost_bound);
        doc["costs"] = json::array();
        for (const auto& c : inst.costs) {
            json points = json::array();
            for (const auto& [l, v] : c.points)
                points.push_back(json::array({rat_json(l), rat_json(v)}));
            doc["costs"].push_back(std::move(points));
        }
    }
    return doc;
}

FiniteGame build_finite(const GameFile& file) {
    if (file.normal_form) return file.normal_form->build();
    if (file.congestion) return build_game(*file.congestion);
    if (file.routing) return build_game(to_congestion_model(*file.routing));
    throw DomainError("splittable games have no finite profile space");
}

}  // namespace lip
