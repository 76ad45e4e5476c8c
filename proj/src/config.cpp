#include "cechlap/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cechlap {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> parse_list(const std::string& v) {
    std::string body = v;
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw std::invalid_argument("unterminated list");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(body);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    cfg.epsilons.clear();
    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        try {
            if (key == "space.kind") cfg.space_kind = value;
            else if (key == "space.lengths") cfg.lengths = parse_list(value);
            else if (key == "space.radius") cfg.radius = std::stod(value);
            else if (key == "space.points_file") cfg.points_file = value;
            else if (key == "net.epsilons") cfg.epsilons = parse_list(value);
            else if (key == "net.resolution") cfg.resolution = std::stoul(value);
            else if (key == "net.method") cfg.net_method = value;
            else if (key == "nerve.qmax") cfg.qmax = std::stoi(value);
            else if (key == "spectra.p") cfg.degree_p = std::stoi(value);
            else if (key == "spectra.k_max") cfg.k_max = std::stoul(value);
            else if (key == "whitney.grid_sizes") {
                cfg.whitney_grids.clear();
                for (const auto& s : parse_list(value)) cfg.whitney_grids.push_back(std::stoul(s));
            } else if (key == "whitney.trials") cfg.whitney_trials = std::stoul(value);
            else if (key == "output.dir") cfg.output_dir = value;
            else if (key == "seed") cfg.seed = std::stoull(value);
            else fail(origin, lineno, "unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            fail(origin, lineno, std::string("bad value for '") + key + "': " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

ModelSpace ExperimentConfig::make_space() const {
    if (space_kind == "flat_torus") return ModelSpace::flat_torus_decimal(lengths);
    if (space_kind == "sphere") return ModelSpace::sphere(radius);
    if (space_kind == "point_cloud") {
        if (points_file.empty()) throw std::invalid_argument("point_cloud space needs space.points_file");
        std::ifstream in(points_file);
        if (!in) throw std::invalid_argument("cannot open points file: " + points_file);
        std::vector<std::vector<double>> pts;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty()) continue;
            std::vector<double> row;
            std::string cell;
            std::istringstream ls(line);
            while (std::getline(ls, cell, ',')) row.push_back(std::stod(trim(cell)));
            if (!pts.empty() && row.size() != pts[0].size())
                throw std::invalid_argument("points file: ragged rows in " + points_file);
            pts.push_back(std::move(row));
        }
        std::vector<std::vector<double>> dist(pts.size(), std::vector<double>(pts.size(), 0.0));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double s = 0.0;
                for (std::size_t a = 0; a < pts[i].size(); ++a) {
                    double d = pts[i][a] - pts[j][a];
                    s += d * d;
                }
                dist[i][j] = dist[j][i] = std::sqrt(s);
            }
        return ModelSpace::point_cloud(std::move(pts), std::move(dist));
    }
    throw std::invalid_argument("unknown space.kind '" + space_kind + "'");
}

void ExperimentConfig::validate() const {
    if (epsilons.empty()) throw std::invalid_argument("config: net.epsilons must be a nonempty list");
    double prev = 0.0;
    for (const auto& e : epsilons) {
        double v = to_double(rat_from_decimal(e));
        if (!(v > 0)) throw std::invalid_argument("config: epsilons must be positive");
        if (!(v > prev)) throw std::invalid_argument("config: epsilons must be strictly ascending");
        prev = v;
    }
    if (k_max < 1) throw std::invalid_argument("config: spectra.k_max must be >= 1");
    if (qmax < 0) throw std::invalid_argument("config: nerve.qmax must be >= 0");
    if (resolution < 2) throw std::invalid_argument("config: net.resolution must be >= 2");
    if (net_method != "greedy" && net_method != "lattice")
        throw std::invalid_argument("config: net.method must be greedy or lattice");
    if (space_kind == "flat_torus" && lengths.empty())
        throw std::invalid_argument("config: flat torus needs space.lengths");
}

} // namespace cechlap
