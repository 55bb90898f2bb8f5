#include "doctest.h"

#include <sstream>

#include "linemarch/simulator.hpp"
#include "linemarch/trajectory_log.hpp"

using namespace linemarch;

TEST_CASE("empty log writes only the header") {
    std::ostringstream out;
    write_trajectory_csv(TrajectoryLog{}, out);
    CHECK(out.str() == std::string(kTrajectoryHeader) + "\n");
}

TEST_CASE("one robot, two steps gives three rows") {
    Scenario s = case_a();
    s.robots.resize(1);
    s.obstacles.clear();
    s.sim.duration = 2 * s.sim.T;
    const TrajectoryLog log = run_scenario(s);
    std::ostringstream out;
    write_trajectory_csv(log, out);
    std::istringstream in(out.str());
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("CSV round trip reproduces the records exactly") {
    for (const char* name : {"case-b-dynamic", "unicycle-4phase"}) {
        Scenario s = *builtin_scenario(name);
        s.sim.duration = 40 * s.sim.T;
        s.sim.noise_std = 0.01;
        const TrajectoryLog log = run_scenario(s);
        std::stringstream buf;
        write_trajectory_csv(log, buf);
        CHECK(read_trajectory_csv(buf) == log.records);
    }
}

TEST_CASE("unicycle columns are empty for kinematic runs") {
    Scenario s = case_a();
    s.sim.duration = 0.0;
    const TrajectoryLog log = run_scenario(s);
    std::ostringstream out;
    write_trajectory_csv(log, out);
    std::istringstream in(out.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.substr(row.size() - 4) == ",,,,");
}

TEST_CASE("malformed CSV is rejected") {
    std::istringstream wrong_header("a,b,c\n");
    CHECK_THROWS(read_trajectory_csv(wrong_header));
    std::istringstream short_row(std::string(kTrajectoryHeader) + "\n0,1,2\n");
    CHECK_THROWS(read_trajectory_csv(short_row));
}

TEST_CASE("numbers keep 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
