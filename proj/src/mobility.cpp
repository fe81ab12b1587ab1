#include "cogsim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <string>

#include "cogsim/error.hpp"
#include "cogsim/simd/kernels.hpp"
#include "cogsim/text.hpp"

namespace cogsim {

void MobilityConfig::validate() const {
    if (!(area_width > 0.0) || !(area_height > 0.0)) throw ConfigError("mobility.area must be > 0");
    if (grid < 1) throw ConfigError("mobility.grid must be >= 1");
    if (num_nodes < 1) throw ConfigError("mobility.num_nodes must be >= 1");
    if (num_communities < 1) throw ConfigError("mobility.num_communities must be >= 1");
    if (num_communities > grid * grid) {
        throw ConfigError("mobility.num_communities exceeds the number of grid cells");
    }
    if (num_communities > num_nodes) throw ConfigError("mobility.num_communities exceeds num_nodes");
    if (travellers_per_community * num_communities > num_nodes) {
        throw ConfigError("mobility.travellers_per_community exceeds community size");
    }
    if (!(speed_min >= 0.0)) throw ConfigError("mobility.speed_min must be >= 0");
    if (!(speed_min <= speed_max)) throw ConfigError("mobility.speed_min must be <= speed_max");
    if (!(tx_range > 0.0)) throw ConfigError("mobility.tx_range must be > 0");
    if (!(time_step > 0.0)) throw ConfigError("mobility.time_step must be > 0");
    if (!(duration > 0.0)) throw ConfigError("mobility.duration must be > 0");
    if (!(travel_probability >= 0.0 && travel_probability <= 1.0)) {
        throw ConfigError("mobility.travel_probability must be in [0, 1]");
    }
}

namespace {

bool adjacent(const GridCell& a, const GridCell& b) {
    const auto dc = std::abs(static_cast<long>(a.col) - static_cast<long>(b.col));
    const auto dr = std::abs(static_cast<long>(a.row) - static_cast<long>(b.row));
    return std::max(dc, dr) <= 1;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
    }
}

}  // namespace

std::vector<GridCell> place_communities(const MobilityConfig& cfg, Rng& rng) {
    const std::uint32_t g = cfg.grid;
    const std::uint32_t k = cfg.num_communities;
    std::vector<GridCell> cells;
    for (std::uint32_t r = 0; r < g; ++r) {
        for (std::uint32_t c = 0; c < g; ++c) cells.push_back({c, r});
    }
    if (k == 1) return {cells[static_cast<std::size_t>(rng.below(cells.size()))]};

    // At most ceil(g/2)^2 cells can be pairwise non-adjacent; the even lattice
    // attains it.
    const std::uint32_t half = (g + 1) / 2;
    if (k > half * half) {
        throw ConfigError("cannot place " + std::to_string(k) + " non-adjacent communities on a " +
                          std::to_string(g) + "x" + std::to_string(g) + " grid");
    }
    shuffle(cells, rng);
    std::vector<GridCell> chosen;
    for (const GridCell& c : cells) {
        if (std::none_of(chosen.begin(), chosen.end(), [&](const GridCell& o) { return adjacent(c, o); })) {
            chosen.push_back(c);
            if (chosen.size() == k) return chosen;
        }
    }
    std::vector<GridCell> lattice;
    for (std::uint32_t r = 0; r < g; r += 2) {
        for (std::uint32_t c = 0; c < g; c += 2) lattice.push_back({c, r});
    }
    shuffle(lattice, rng);
    lattice.resize(k);
    return lattice;
}

std::vector<std::uint32_t> assign_communities(std::uint32_t num_nodes, std::uint32_t num_communities) {
    std::vector<std::uint32_t> out(num_nodes);
    for (std::uint32_t i = 0; i < num_nodes; ++i) {
        out[i] = static_cast<std::uint32_t>(std::uint64_t{i} * num_communities / num_nodes);
    }
    return out;
}

double sample_speed(const MobilityConfig& cfg, Rng& rng) {
    if (cfg.speed_min == cfg.speed_max) return cfg.speed_min;
    return rng.uniform(cfg.speed_min, cfg.speed_max);
}

ContactTracker::ContactTracker(std::size_t num_nodes, double tx_range)
    : n_(num_nodes), range_sq_(tx_range * tx_range),
      open_since_(num_nodes * (num_nodes > 0 ? num_nodes - 1 : 0) / 2,
                  std::numeric_limits<double>::quiet_NaN()),
      flags_(num_nodes) {}

std::size_t ContactTracker::pair_index(std::size_t i, std::size_t j) const {
    // Row-major upper triangle, i < j.
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

void ContactTracker::observe(double t, std::span<const double> xs, std::span<const double> ys) {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        const std::size_t rest = n_ - i - 1;
        simd::in_range(xs[i], ys[i], xs.subspan(i + 1, rest), ys.subspan(i + 1, rest), range_sq_,
                       std::span<std::uint8_t>(flags_.data(), rest));
        const std::size_t base = pair_index(i, i + 1);
        for (std::size_t k = 0; k < rest; ++k) {
            double& since = open_since_[base + k];
            const bool open = !std::isnan(since);
            if (flags_[k] && !open) {
                since = t;
            } else if (!flags_[k] && open) {
                events_.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1 + k), since, t});
                since = std::numeric_limits<double>::quiet_NaN();
            }
        }
    }
}

std::vector<ContactEvent> ContactTracker::finish(double t_end) {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            double& since = open_since_[pair_index(i, j)];
            if (!std::isnan(since) && t_end > since) {
                events_.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), since, t_end});
            }
            since = std::numeric_limits<double>::quiet_NaN();
        }
    }
    std::vector<ContactEvent> out = std::move(events_);
    events_.clear();
    std::sort(out.begin(), out.end(), [](const ContactEvent& a, const ContactEvent& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.node_a != b.node_a) return a.node_a < b.node_a;
        return a.node_b < b.node_b;
    });
    return out;
}

namespace {

struct Walker {
    double x = 0.0;
    double y = 0.0;
    double wx = 0.0;
    double wy = 0.0;
    double speed = 0.0;
    std::uint32_t home = 0;
    bool traveller = false;
    bool away = false;
};

struct CellBox {
    double x0, y0, w, h;
};

}  // namespace

MobilityTrace generate_trace(const MobilityConfig& cfg, const PositionSink& sink) {
    cfg.validate();
    Rng rng(cfg.seed, "mobility");

    MobilityTrace trace;
    trace.community_cells = place_communities(cfg, rng);
    trace.community = assign_communities(cfg.num_nodes, cfg.num_communities);
    trace.traveller.assign(cfg.num_nodes, false);

    const double cw = cfg.area_width / cfg.grid;
    const double ch = cfg.area_height / cfg.grid;
    std::vector<CellBox> boxes;
    for (const GridCell& c : trace.community_cells) boxes.push_back({c.col * cw, c.row * ch, cw, ch});

    auto point_in = [&](std::uint32_t community, double& x, double& y) {
        const CellBox& b = boxes[community];
        x = b.x0 + b.w * rng.uniform01();
        y = b.y0 + b.h * rng.uniform01();
    };

    std::vector<Walker> walkers(cfg.num_nodes);
    std::vector<std::uint32_t> seen_in_community(cfg.num_communities, 0);
    for (std::uint32_t i = 0; i < cfg.num_nodes; ++i) {
        Walker& w = walkers[i];
        w.home = trace.community[i];
        w.traveller = seen_in_community[w.home]++ < cfg.travellers_per_community;
        trace.traveller[i] = w.traveller;
        point_in(w.home, w.x, w.y);
        point_in(w.home, w.wx, w.wy);
        w.speed = sample_speed(cfg, rng);
    }

    auto next_waypoint = [&](Walker& w) {
        std::uint32_t target = w.home;
        if (w.away) {
            w.away = false;
        } else if (w.traveller && cfg.num_communities > 1 && rng.bernoulli(cfg.travel_probability)) {
            const auto pick = static_cast<std::uint32_t>(rng.below(cfg.num_communities - 1));
            target = pick >= w.home ? pick + 1 : pick;
            w.away = true;
        }
        point_in(target, w.wx, w.wy);
        w.speed = sample_speed(cfg, rng);
    };

    ContactTracker tracker(cfg.num_nodes, cfg.tx_range);
    std::vector<double> xs(cfg.num_nodes);
    std::vector<double> ys(cfg.num_nodes);
    const auto steps = static_cast<std::uint64_t>(std::floor(cfg.duration / cfg.time_step + 1e-9));
    for (std::uint64_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * cfg.time_step;
        if (k > 0) {
            for (Walker& w : walkers) {
                const double dx = w.wx - w.x;
                const double dy = w.wy - w.y;
                const double dist = std::hypot(dx, dy);
                const double reach = w.speed * cfg.time_step;
                if (dist <= reach) {
                    w.x = w.wx;
                    w.y = w.wy;
                    next_waypoint(w);
                } else {
                    w.x += dx / dist * reach;
                    w.y += dy / dist * reach;
                }
            }
        }
        for (std::uint32_t i = 0; i < cfg.num_nodes; ++i) {
            xs[i] = walkers[i].x;
            ys[i] = walkers[i].y;
            if (sink) sink(t, i, xs[i], ys[i]);
        }
        tracker.observe(t, xs, ys);
    }
    trace.contacts = tracker.finish(cfg.duration);
    return trace;
}

void validate_contacts(std::span<const ContactEvent> events) {
    std::map<std::pair<NodeId, NodeId>, std::vector<std::pair<double, double>>> by_pair;
    for (const ContactEvent& e : events) {
        if (e.node_a >= e.node_b) {
            throw ValidationError("contact " + std::to_string(e.node_a) + "-" +
                                  std::to_string(e.node_b) + " must have node_a < node_b");
        }
        if (!(e.end > e.start) || !std::isfinite(e.start) || !std::isfinite(e.end)) {
            throw ValidationError("contact " + std::to_string(e.node_a) + "-" +
                                  std::to_string(e.node_b) + " has end <= start");
        }
        by_pair[{e.node_a, e.node_b}].emplace_back(e.start, e.end);
    }
    for (auto& [pair, spans] : by_pair) {
        std::sort(spans.begin(), spans.end());
        for (std::size_t i = 1; i < spans.size(); ++i) {
            if (spans[i].first < spans[i - 1].second) {
                throw ValidationError("overlapping contacts for pair " + std::to_string(pair.first) +
                                      "-" + std::to_string(pair.second));
            }
        }
    }
}

void save_trace(std::ostream& out, std::span<const ContactEvent> events) {
    out << "# node_a node_b start_s end_s\n";
    for (const ContactEvent& e : events) {
        out << e.node_a << ' ' << e.node_b << ' ' << text::format_number(e.start) << ' '
            << text::format_number(e.end) << '\n';
    }
}

void save_trace(const std::filesystem::path& path, std::span<const ContactEvent> events) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    save_trace(out, events);
}

std::vector<ContactEvent> load_trace(std::istream& in) {
    std::vector<ContactEvent> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::strip_comment(line);
        if (body.empty()) continue;
        const auto fields = text::split_fields(body, line_no);
        unsigned long long a = 0;
        unsigned long long b = 0;
        ContactEvent e;
        if (fields.size() != 4 || !text::parse_unsigned(fields[0], a) ||
            !text::parse_unsigned(fields[1], b) || !text::parse_number(fields[2], e.start) ||
            !text::parse_number(fields[3], e.end)) {
            throw ParseError("expected '<node_a> <node_b> <start_s> <end_s>'", line_no);
        }
        if (a > std::numeric_limits<NodeId>::max() || b > std::numeric_limits<NodeId>::max()) {
            throw ParseError("node id out of range", line_no);
        }
        e.node_a = static_cast<NodeId>(a);
        e.node_b = static_cast<NodeId>(b);
        events.push_back(e);
    }
    validate_contacts(events);
    std::stable_sort(events.begin(), events.end(), [](const ContactEvent& x, const ContactEvent& y) {
        if (x.start != y.start) return x.start < y.start;
        if (x.node_a != y.node_a) return x.node_a < y.node_a;
        return x.node_b < y.node_b;
    });
    return events;
}

std::vector<ContactEvent> load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    return load_trace(in);
}

}  // namespace cogsim
