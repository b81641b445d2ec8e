#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bksim/error.hpp"
#include "bksim/io.hpp"

namespace bksim {

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "short write to '" + path.string() + "'");
}

void put_le(std::string& out, double x) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
}

double get_le(const std::string& in, std::size_t offset) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + b])) << (8 * b);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records) {
    std::string out = kTimeseriesHeader;
    out += '\n';
    for (const auto& r : records) {
        out += g17(r.t) + ',' + g17(r.l2_C) + ',' + g17(r.h1s_C) + ',' + g17(r.l2_U) + ',' + g17(r.h1s_U) + ',' +
               g17(r.energy) + ',' + g17(r.mass) + ',' + g17(r.div_residual) + ',' + g17(r.dt) + ',' +
               std::to_string(r.cg_iters) + '\n';
    }
    return out;
}

void write_timeseries(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records) {
    write_file(path, timeseries_csv(records));
}

std::vector<DiagnosticsRecord> parse_timeseries(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTimeseriesHeader)
        throw Error(ErrorCode::MalformedLine, "timeseries header mismatch (line 1)");
    std::vector<DiagnosticsRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cols.push_back(cell);
        if (cols.size() != 10)
            throw Error(ErrorCode::MalformedLine, "expected 10 columns (line " + std::to_string(lineno) + ")");
        double v[9];
        for (int c = 0; c < 9; ++c) {
            const char* b = cols[c].data();
            const char* e = b + cols[c].size();
            auto [p, ec] = std::from_chars(b, e, v[c]);
            if (ec != std::errc() || p != e)
                throw Error(ErrorCode::MalformedLine, "bad number '" + cols[c] + "' (line " + std::to_string(lineno) + ")");
        }
        long iters = 0;
        {
            const char* b = cols[9].data();
            const char* e = b + cols[9].size();
            auto [p, ec] = std::from_chars(b, e, iters);
            if (ec != std::errc() || p != e)
                throw Error(ErrorCode::MalformedLine, "bad integer '" + cols[9] + "' (line " + std::to_string(lineno) + ")");
        }
        DiagnosticsRecord r;
        r.t = v[0];
        r.l2_C = v[1];
        r.h1s_C = v[2];
        r.l2_U = v[3];
        r.h1s_U = v[4];
        r.energy = v[5];
        r.mass = v[6];
        r.div_residual = v[7];
        r.dt = v[8];
        r.cg_iters = iters;
        out.push_back(r);
    }
    return out;
}

std::vector<DiagnosticsRecord> read_timeseries(const std::filesystem::path& path) {
    return parse_timeseries(read_file(path));
}

std::string snapshot_bytes(const State& s) {
    const Grid& g = s.concentration.grid();
    std::string out = "BKSIM1 " + std::to_string(g.nx) + ' ' + std::to_string(g.ny) + ' ' + g17(g.lx) + ' ' +
                      g17(g.ly) + ' ' + g17(s.t) + '\n';
    for (double x : s.concentration.values()) put_le(out, x);
    for (double x : s.velocity.u_values()) put_le(out, x);
    for (double x : s.velocity.v_values()) put_le(out, x);
    for (double x : s.p_tilde.values()) put_le(out, x);
    return out;
}

State parse_snapshot(const std::string& bytes) {
    const auto nl = bytes.find('\n');
    if (bytes.rfind("BKSIM1 ", 0) != 0 || nl == std::string::npos)
        throw Error(ErrorCode::BadMagic, "snapshot does not start with 'BKSIM1 '");
    std::istringstream hs(bytes.substr(7, nl - 7));
    long long nx = 0, ny = 0;
    std::string lx_s, ly_s, t_s;
    if (!(hs >> nx >> ny >> lx_s >> ly_s >> t_s))
        throw Error(ErrorCode::BadMagic, "snapshot header is not 'BKSIM1 nx ny lx ly t'");
    auto num = [](const std::string& s) {
        double x = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
        if (ec != std::errc() || p != s.data() + s.size()) throw Error(ErrorCode::BadMagic, "bad snapshot header value '" + s + "'");
        return x;
    };
    const double lx = num(lx_s), ly = num(ly_s), t = num(t_s);
    if (nx < 4 || ny < 4 || nx > 1'000'000 || ny > 1'000'000)
        throw Error(ErrorCode::SizeMismatch, "snapshot grid size out of range");
    Grid g;
    try {
        g = make_grid(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
    } catch (const Error& e) {
        throw Error(ErrorCode::SizeMismatch, std::string("snapshot grid invalid: ") + e.what());
    }
    const std::size_t count = 2 * g.cells() + g.xfaces() + g.yfaces();
    const std::size_t payload = bytes.size() - (nl + 1);
    if (payload != 8 * count)
        throw Error(ErrorCode::SizeMismatch, "snapshot payload has " + std::to_string(payload) + " bytes, header implies " +
                                                 std::to_string(8 * count));
    State s = make_state(g, t);
    std::size_t off = nl + 1;
    auto fill = [&](std::span<double> dst) {
        for (double& x : dst) {
            x = get_le(bytes, off);
            off += 8;
            if (!std::isfinite(x)) throw Error(ErrorCode::NonFinitePayload, "snapshot contains a non-finite value");
        }
    };
    fill(s.concentration.values());
    fill(s.velocity.u_values());
    fill(s.velocity.v_values());
    fill(s.p_tilde.values());
    if (!std::isfinite(t)) throw Error(ErrorCode::NonFinitePayload, "snapshot time is not finite");
    if (!s.velocity.no_penetration_holds())
        throw Error(ErrorCode::InvalidArgument, "snapshot has non-zero wall-normal velocity");
    return s;
}

void write_snapshot(const std::filesystem::path& path, const State& s) { write_file(path, snapshot_bytes(s)); }

State read_snapshot(const std::filesystem::path& path) { return parse_snapshot(read_file(path)); }

ScalarField physical_pressure(const ScalarField& p_tilde, const ScalarField& c, const Params& p) {
    if (!(p_tilde.grid() == c.grid())) throw Error(ErrorCode::InvalidArgument, "pressure and concentration grids differ");
    ScalarField out = q_correction(c, p);
    auto o = out.values();
    auto pt = p_tilde.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] += pt[k];
    remove_mean(out);
    return out;
}

}  // namespace bksim
