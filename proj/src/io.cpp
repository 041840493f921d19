#include "sqgrelax/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "sqgrelax/errors.hpp"

namespace sqg::io {

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

void ensure_parent(const std::string& path) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

void write_field(const std::string& path, const Field& f, const json& metadata) {
    Field copy = f;
    copy.to_physical();
    const GridSpec& g = copy.grid();

    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_field: cannot open " + path);

    char header[32] = {};
    std::memcpy(header, kMagic, 4);
    std::uint32_t v = kVersion, n = static_cast<std::uint32_t>(g.n);
    std::memcpy(header + 4, &v, 4);
    std::memcpy(header + 8, &n, 4);
    std::memcpy(header + 12, &g.box_length, 8);
    out.write(header, sizeof header);
    out.write(reinterpret_cast<const char*>(copy.physical().data()),
              static_cast<std::streamsize>(g.size() * sizeof(double)));
    if (!out) throw Error("write_field: short write to " + path);

    json side = metadata;
    side["grid"] = {{"n", g.n}, {"box_length", g.box_length}};
    write_json(path + ".json", side);
}

Field read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_field: cannot open " + path);

    char header[32];
    in.read(header, sizeof header);
    if (!in || std::memcmp(header, kMagic, 4) != 0)
        throw Error("read_field: bad header in " + path);
    std::uint32_t v, n;
    double box;
    std::memcpy(&v, header + 4, 4);
    std::memcpy(&n, header + 8, 4);
    std::memcpy(&box, header + 12, 8);
    if (v != kVersion) throw Error("read_field: unknown format version");

    GridSpec g{static_cast<int>(n), box};
    std::vector<double> vals(g.size());
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!in) throw Error("read_field: truncated data in " + path);
    return Field::from_physical(g, std::move(vals));
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    ensure_parent(path);
    std::ofstream out(path);
    if (!out) throw Error("write_trajectory_csv: cannot open " + path);

    for (std::size_t j = 0; j < traj.columns.size(); ++j)
        out << (j ? "," : "") << traj.columns[j];
    out << "\n";
    char buf[40];
    for (const auto& row : traj.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", row[j]);
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw Error("write_trajectory_csv: write failed for " + path);
}

void write_json(const std::string& path, const json& j) {
    ensure_parent(path);
    std::ofstream out(path);
    if (!out) throw Error("write_json: cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw Error("write_json: write failed for " + path);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_json: cannot open " + path);
    return json::parse(in);
}

}  // namespace sqg::io
