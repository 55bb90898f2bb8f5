#include "linemarch/trajectory_log.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace linemarch {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void put_optional(std::ostream& out, const std::optional<double>& v) {
    if (v) out << format_double(*v);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw std::runtime_error("bad number in trajectory CSV: '" + s + "'");
    return v;
}

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s);
}

}  // namespace

void write_trajectory_csv(const TrajectoryLog& log, std::ostream& out) {
    out << kTrajectoryHeader << '\n';
    for (const LogRecord& r : log.records) {
        out << format_double(r.t) << ',' << r.robot << ',' << format_double(r.p.x) << ','
            << format_double(r.p.y) << ',' << format_double(r.v.x) << ',' << format_double(r.v.y)
            << ',';
        if (r.leader) out << *r.leader;
        out << ',' << (r.head ? 1 : 0) << ',' << (r.failed ? 1 : 0) << ',';
        put_optional(out, r.upsilon);
        out << ',';
        put_optional(out, r.varpi);
        out << ',';
        put_optional(out, r.wl);
        out << ',';
        put_optional(out, r.wr);
        out << '\n';
    }
}

void write_obstacle_csv(const TrajectoryLog& log, std::ostream& out) {
    out << kObstacleHeader << '\n';
    for (const ObstacleRecord& o : log.obstacles)
        out << format_double(o.t) << ',' << o.obstacle << ',' << format_double(o.q.x) << ','
            << format_double(o.q.y) << '\n';
}

void write_log(const TrajectoryLog& log, const std::string& trajectory_path,
               const std::string& obstacle_path) {
    std::ofstream out(trajectory_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + trajectory_path);
    write_trajectory_csv(log, out);
    if (!out) throw std::runtime_error("write failed: " + trajectory_path);
    if (!obstacle_path.empty()) {
        std::ofstream ob(obstacle_path, std::ios::binary);
        if (!ob) throw std::runtime_error("cannot write " + obstacle_path);
        write_obstacle_csv(log, ob);
    }
}

std::vector<LogRecord> read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader)
        throw std::runtime_error("trajectory CSV header mismatch");
    std::vector<LogRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() != 13) throw std::runtime_error("trajectory CSV row has wrong arity");
        LogRecord r;
        r.t = parse_double(c[0]);
        r.robot = std::stoi(c[1]);
        r.p = {parse_double(c[2]), parse_double(c[3])};
        r.v = {parse_double(c[4]), parse_double(c[5])};
        if (!c[6].empty()) r.leader = std::stoi(c[6]);
        r.head = c[7] == "1";
        r.failed = c[8] == "1";
        r.upsilon = parse_optional(c[9]);
        r.varpi = parse_optional(c[10]);
        r.wl = parse_optional(c[11]);
        r.wr = parse_optional(c[12]);
        out.push_back(r);
    }
    return out;
}

}  // namespace linemarch
