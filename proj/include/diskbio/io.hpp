#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskbio/assembly.hpp"

namespace diskbio {

/// Shortest-roundtrip decimal for doubles (%.17g).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Matrix container format: magic "DBIO1\n", one ASCII header line
/// "rows cols operator space level a\n", then row-major little-endian
/// IEEE-754 doubles.
inline void write_matrix_dbio(const std::string& path, const GalerkinMatrix& gm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "DBIO1\n";
    out << gm.entries.rows() << ' ' << gm.entries.cols() << ' ' << gm.op << ' '
        << to_string(gm.trial) << ' ' << gm.level << ' ' << format_double(gm.a) << '\n';
    static_assert(sizeof(double) == 8);
    for (Eigen::Index i = 0; i < gm.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < gm.entries.cols(); ++j) {
            double v = gm.entries(i, j);
            uint64_t bits;
            std::memcpy(&bits, &v, 8);
            unsigned char le[8];
            for (int b = 0; b < 8; ++b) le[b] = (bits >> (8 * b)) & 0xff;
            out.write(reinterpret_cast<const char*>(le), 8);
        }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline GalerkinMatrix read_matrix_dbio(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != "DBIO1") throw std::runtime_error(path + ": bad magic");
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    GalerkinMatrix gm;
    long rows, cols;
    std::string space;
    if (!(hs >> rows >> cols >> gm.op >> space >> gm.level >> gm.a))
        throw std::runtime_error(path + ": bad header");
    gm.trial = gm.test = space_kind_from(space);
    gm.entries.resize(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            unsigned char le[8];
            in.read(reinterpret_cast<char*>(le), 8);
            if (!in) throw std::runtime_error(path + ": truncated payload");
            uint64_t bits = 0;
            for (int b = 0; b < 8; ++b) bits |= uint64_t(le[b]) << (8 * b);
            double v;
            std::memcpy(&v, &bits, 8);
            gm.entries(i, j) = v;
        }
    return gm;
}

/// Minimal CSV writer; values already formatted by the caller.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

} // namespace diskbio
