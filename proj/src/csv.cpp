#include "kpp/csv.hpp"

#include <cstdio>
#include <fstream>

#include "kpp/errors.hpp"

namespace kpp {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trace_csv(const std::string& path, const FrontTrace& trace) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "t,omega,x_left,x_right\n";
    for (std::size_t k = 0; k < trace.omegas.size(); ++k)
        for (std::size_t i = 0; i < trace.times.size(); ++i)
            out << g17(trace.times[i]) << ',' << g17(trace.omegas[k]) << ','
                << g17(trace.x_left[k][i]) << ',' << g17(trace.x_right[k][i]) << '\n';
}

void write_snapshot_csv(const std::string& path, const SimState& st) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "x,u\n";
    for (std::size_t i = 0; i < st.values.size(); ++i)
        out << g17(st.x(i)) << ',' << g17(st.values[i]) << '\n';
}

}  // namespace kpp
