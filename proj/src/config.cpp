#include "cogsim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "cogsim/error.hpp"

namespace cogsim {

using nlohmann::json;

namespace {

// Reads fields of one JSON object, remembering which keys were consumed so
// leftovers can be reported.
class Section {
public:
    Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    ~Section() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (const auto& [key, value] : doc_.items()) {
            if (!used_.contains(key)) throw ConfigError(where(key) + ": unknown key");
        }
    }

    const json* find(const std::string& key) {
        used_.insert(key);
        auto it = doc_.find(key);
        return it == doc_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) out = as_number(*v, where(key));
    }

    template <class T>
    void count(const std::string& key, T& out) {
        if (const json* v = find(key)) out = as_count<T>(*v, where(key));
    }

    void flag(const std::string& key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) throw ConfigError(where(key) + ": expected true or false");
            out = v->get<bool>();
        }
    }

    void path(const std::string& key, std::optional<std::filesystem::path>& out) {
        if (const json* v = find(key)) {
            if (v->is_null()) {
                out.reset();
            } else if (v->is_string()) {
                out = v->get<std::string>();
            } else {
                throw ConfigError(where(key) + ": expected a path string or null");
            }
        }
    }

    std::string where(const std::string& key) const { return path_ + "." + key; }

    static double as_number(const json& v, const std::string& where) {
        if (v.is_number()) return v.get<double>();
        if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) {
            return std::numeric_limits<double>::infinity();
        }
        throw ConfigError(where + ": expected a number");
    }

    template <class T>
    static T as_count(const json& v, const std::string& where) {
        if (v.is_number_unsigned() && v.get<std::uint64_t>() <= std::numeric_limits<T>::max()) {
            return static_cast<T>(v.get<std::uint64_t>());
        }
        if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
            throw ConfigError(where + ": must be >= 0");
        }
        throw ConfigError(where + ": expected a non-negative integer");
    }

private:
    const json& doc_;
    std::string path_;
    std::set<std::string> used_;
};

void apply_mobility(SimConfig& cfg, const json& doc) {
    Section s(doc, "mobility");
    MobilityConfig& m = cfg.mobility;
    s.path("trace", cfg.trace_path);
    s.number("area_width", m.area_width);
    s.number("area_height", m.area_height);
    s.count("grid", m.grid);
    s.count("num_nodes", m.num_nodes);
    s.count("num_communities", m.num_communities);
    s.count("travellers_per_community", m.travellers_per_community);
    s.number("speed_min", m.speed_min);
    s.number("speed_max", m.speed_max);
    s.number("tx_range", m.tx_range);
    s.number("time_step", m.time_step);
    s.number("travel_probability", m.travel_probability);
}

void apply_dataset(SimConfig& cfg, const json& doc) {
    Section s(doc, "dataset");
    DatasetConfig& d = cfg.dataset;
    s.path("items", cfg.items_path);
    s.path("assignment", cfg.assignment_path);
    if (const json* v = s.find("regime")) {
        if (!v->is_string()) throw ConfigError("dataset.regime: expected \"d1\" or \"d2\"");
        // Switching regime swaps in that regime's defaults; keys below still win.
        const Regime r = parse_regime(v->get<std::string>());
        if (r != d.regime) {
            const std::uint64_t seed = d.seed;
            d = DatasetConfig::defaults(r);
            d.seed = seed;
        }
    }
    s.count("num_items", d.num_items);
    s.count("items_per_node", d.items_per_node);
    if (const json* v = s.find("tags_per_item")) {
        if (!v->is_array() || v->size() != 2) {
            throw ConfigError("dataset.tags_per_item: expected [lo, hi]");
        }
        d.tags_per_item_lo = Section::as_count<std::uint32_t>((*v)[0], "dataset.tags_per_item[0]");
        d.tags_per_item_hi = Section::as_count<std::uint32_t>((*v)[1], "dataset.tags_per_item[1]");
    }
    s.count("num_main_concepts", d.num_main_concepts);
    if (const json* v = s.find("tag_pool_sizes")) {
        if (!v->is_array()) throw ConfigError("dataset.tag_pool_sizes: expected an array");
        d.tag_pool_sizes.clear();
        for (std::size_t i = 0; i < v->size(); ++i) {
            d.tag_pool_sizes.push_back(Section::as_count<std::uint32_t>(
                (*v)[i], "dataset.tag_pool_sizes[" + std::to_string(i) + "]"));
        }
    }
    s.number("cross_cluster_tag_fraction", d.cross_cluster_tag_fraction);
    s.number("zipf_exponent", d.zipf_exponent);
    if (const json* v = s.find("duplicate_assignment")) {
        if (v->is_null()) {
            d.duplicate_assignment.reset();
        } else if (v->is_boolean()) {
            d.duplicate_assignment = v->get<bool>();
        } else {
            throw ConfigError("dataset.duplicate_assignment: expected true, false or null");
        }
    }
}

void apply_exchange(SimConfig& cfg, const json& doc) {
    Section s(doc, "exchange");
    ExchangeParams& e = cfg.exchange;
    s.count("tag_limit", e.tag_limit);
    s.count("data_limit", e.data_limit);
    s.count("theta_rec", e.theta_rec);
    s.number("w_min", e.w_min_seconds);
    s.number("tau", e.tau);
    s.number("gamma", e.gamma);
}

void apply_engine(SimConfig& cfg, const json& doc) {
    Section s(doc, "engine");
    s.number("f_min", cfg.f_min);
    s.number("snapshot_interval", cfg.snapshot_interval);
    s.number("duration", cfg.duration);
    s.count("seed", cfg.seed);
    s.count("tagged_node", cfg.tagged_node);
    s.flag("write_snapshots", cfg.write_snapshots);
    s.flag("node_detail", cfg.node_detail);
}

json number_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json path_json(const std::optional<std::filesystem::path>& p) {
    return p ? json(p->string()) : json(nullptr);
}

}  // namespace

void apply_config(SimConfig& cfg, const json& doc) {
    Section s(doc, "config");
    if (const json* v = s.find("algorithm")) {
        if (!v->is_string()) throw ConfigError("config.algorithm: expected \"ca\" or \"ba\"");
        cfg.algorithm = parse_algorithm(v->get<std::string>());
    }
    if (const json* v = s.find("mobility")) apply_mobility(cfg, *v);
    if (const json* v = s.find("dataset")) apply_dataset(cfg, *v);
    if (const json* v = s.find("exchange")) apply_exchange(cfg, *v);
    if (const json* v = s.find("engine")) apply_engine(cfg, *v);
}

void apply_config_file(SimConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    apply_config(cfg, doc);
}

json config_to_json(const SimConfig& cfg) {
    const MobilityConfig& m = cfg.mobility;
    const DatasetConfig& d = cfg.dataset;
    const ExchangeParams& e = cfg.exchange;
    json doc;
    doc["algorithm"] = algorithm_name(cfg.algorithm);
    doc["mobility"] = {
        {"trace", path_json(cfg.trace_path)},
        {"area_width", m.area_width},
        {"area_height", m.area_height},
        {"grid", m.grid},
        {"num_nodes", m.num_nodes},
        {"num_communities", m.num_communities},
        {"travellers_per_community", m.travellers_per_community},
        {"speed_min", m.speed_min},
        {"speed_max", m.speed_max},
        {"tx_range", m.tx_range},
        {"time_step", m.time_step},
        {"travel_probability", m.travel_probability},
    };
    doc["dataset"] = {
        {"items", path_json(cfg.items_path)},
        {"assignment", path_json(cfg.assignment_path)},
        {"regime", regime_name(d.regime)},
        {"num_items", d.num_items},
        {"items_per_node", d.items_per_node},
        {"tags_per_item", {d.tags_per_item_lo, d.tags_per_item_hi}},
        {"num_main_concepts", d.num_main_concepts},
        {"tag_pool_sizes", d.tag_pool_sizes},
        {"cross_cluster_tag_fraction", d.cross_cluster_tag_fraction},
        {"zipf_exponent", d.zipf_exponent},
        {"duplicate_assignment", d.duplicate_assignment ? json(*d.duplicate_assignment) : json(nullptr)},
    };
    doc["exchange"] = {
        {"tag_limit", e.tag_limit}, {"data_limit", e.data_limit}, {"theta_rec", e.theta_rec},
        {"w_min", e.w_min_seconds}, {"tau", e.tau},               {"gamma", e.gamma},
    };
    doc["engine"] = {
        {"f_min", number_json(cfg.f_min)},
        {"snapshot_interval", cfg.snapshot_interval},
        {"duration", cfg.duration},
        {"seed", cfg.seed},
        {"tagged_node", cfg.tagged_node},
        {"write_snapshots", cfg.write_snapshots},
        {"node_detail", cfg.node_detail},
    };
    return doc;
}

SimConfig scenario_preset(std::string_view name) {
    SimConfig cfg;
    MobilityConfig& m = cfg.mobility;
    if (name == "1") {
        m.num_nodes = 99;
    } else if (name == "2") {
        m.num_nodes = 50;
        cfg.dataset = DatasetConfig::defaults(Regime::d2);
    } else if (name == "3") {
        m.num_nodes = 99;
        m.grid = 6;
        m.num_communities = 3;
        m.travellers_per_community = 2;
        // The tagged node of a multi-community run is a non-traveller.
        cfg.tagged_node = 2;
    } else if (name == "desk") {
        // Scenario 1 shrunk to 50 nodes on a smaller square, for runs that
        // finish in seconds while keeping forgetting and contacts in tension.
        m.num_nodes = 50;
        m.area_width = 750;
        m.area_height = 750;
    } else {
        throw ConfigError("scenario must be 1, 2, 3 or desk, got '" + std::string(name) + "'");
    }
    return cfg;
}

}  // namespace cogsim
