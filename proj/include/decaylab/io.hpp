#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "decaylab/field.hpp"
#include "decaylab/solver.hpp"

namespace decaylab {

inline constexpr const char* timeseries_header =
    "t,l2_sq,hhalf_sq,h3half_sq,lowfrac_g1,lowfrac_g2,bilinear_ratio,energy_residual,"
    "smallness_flag";

inline void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_timeseries_csv: cannot open " + path);
    os << timeseries_header << "\n";
    os.precision(17);
    for (const auto& r : series.records) {
        os << r.t << ',' << r.l2_sq << ',' << r.hhalf_sq << ',' << r.h3half_sq << ','
           << r.lowfrac_g1 << ',' << r.lowfrac_g2 << ',' << r.bilinear_ratio << ','
           << r.energy_residual << ',' << (r.smallness_flag ? 1 : 0) << "\n";
    }
    if (!os) throw std::runtime_error("write_timeseries_csv: write failed for " + path);
}

inline TimeSeries read_timeseries_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_timeseries_csv: cannot open " + path);
    std::string line;
    if (!std::getline(is, line) || line != timeseries_header)
        throw std::runtime_error("read_timeseries_csv: bad header in " + path);
    TimeSeries series;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        TimeSeriesRecord r;
        char comma;
        int flag = 0;
        ls >> r.t >> comma >> r.l2_sq >> comma >> r.hhalf_sq >> comma >> r.h3half_sq >>
            comma >> r.lowfrac_g1 >> comma >> r.lowfrac_g2 >> comma >> r.bilinear_ratio >>
            comma >> r.energy_residual >> comma >> flag;
        if (!ls) throw std::runtime_error("read_timeseries_csv: bad row in " + path);
        r.smallness_flag = flag != 0;
        series.records.push_back(r);
        series.smallness_violated |= r.smallness_flag;
    }
    return series;
}

// Binary spectral field dump: "DLSF0001", int64 n, double box_length, then
// three components of n^3 complex doubles in lattice order (native endian).
inline void write_field(const std::string& path, const SpectralVectorField& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    os.write("DLSF0001", 8);
    const std::int64_t n = u.grid.n;
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&u.grid.box_length), sizeof(double));
    for (int c = 0; c < 3; ++c)
        os.write(reinterpret_cast<const char*>(u.comp[c].data()),
                 static_cast<std::streamsize>(u.comp[c].size() * sizeof(complexd)));
    if (!os) throw std::runtime_error("write_field: write failed for " + path);
}

inline SpectralVectorField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, "DLSF0001", 8) != 0)
        throw std::runtime_error("read_field: bad magic in " + path);
    std::int64_t n = 0;
    double box_length = 0.0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&box_length), sizeof box_length);
    if (!is || n < 8 || n > 4096) throw std::runtime_error("read_field: bad dimensions");
    SpectralVectorField u(Grid(static_cast<int>(n), box_length));
    for (int c = 0; c < 3; ++c)
        is.read(reinterpret_cast<char*>(u.comp[c].data()),
                static_cast<std::streamsize>(u.comp[c].size() * sizeof(complexd)));
    if (!is) throw std::runtime_error("read_field: truncated file " + path);
    return u;
}

// Two-column (t, value) file, gnuplot-ready.
inline void write_xy(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& y) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_xy: cannot open " + path);
    os.precision(17);
    for (std::size_t i = 0; i < x.size(); ++i) os << x[i] << ' ' << y[i] << "\n";
}

}  // namespace decaylab
