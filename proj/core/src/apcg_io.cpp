#include "nocmap/apcg_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "nocmap/errors.hpp"

namespace nocmap {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

template <class Int>
bool parse_int(std::string_view token, Int& out) {
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_double(std::string_view token, double& out) {
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

Apcg parse_apcg(std::string_view text) {
    std::string name;
    std::int32_t core_count = 0;
    bool have_header = false;
    std::vector<Arc> arcs;
    std::set<std::pair<CoreId, CoreId>> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0].front() == '#') continue;

        if (!have_header) {
            if (tokens[0] != "apcg" || tokens.size() != 3)
                throw ApcgParseError(line_no,
                                     "malformed header: expected 'apcg <name> <cores>'");
            if (!parse_int(tokens[2], core_count) || core_count < 0)
                throw ApcgParseError(line_no,
                                     "malformed header: core count must be a "
                                     "non-negative integer");
            name = std::string(tokens[1]);
            have_header = true;
            continue;
        }

        if (tokens.size() != 4)
            throw ApcgParseError(line_no,
                                 "malformed arc: expected '<src> <dst> <volume> "
                                 "<bandwidth>'");
        CoreId src = 0, dst = 0;
        if (!parse_int(tokens[0], src) || !parse_int(tokens[1], dst))
            throw ApcgParseError(line_no, "malformed arc: core ids must be integers");
        for (CoreId id : {src, dst})
            if (id < 0 || id >= core_count)
                throw ApcgParseError(line_no,
                                     "unknown core id " + std::to_string(id));
        if (src == dst)
            throw ApcgParseError(line_no, "self-arc on core " + std::to_string(src));

        std::uint64_t volume = 0;
        if (!parse_int(tokens[2], volume)) {
            std::int64_t negative = 0;
            if (parse_int(tokens[2], negative) && negative < 0)
                throw ApcgParseError(line_no, "negative volume");
            throw ApcgParseError(line_no, "malformed arc: volume must be an integer");
        }
        double bandwidth = 0.0;
        if (!parse_double(tokens[3], bandwidth) || !(bandwidth >= 0.0) ||
            bandwidth > std::numeric_limits<double>::max())
            throw ApcgParseError(line_no,
                                 "malformed arc: bandwidth must be a finite "
                                 "non-negative number");

        if (!seen.insert({src, dst}).second)
            throw ApcgParseError(line_no, "duplicate arc " + std::to_string(src) +
                                              " -> " + std::to_string(dst));
        arcs.push_back({src, dst, volume, bandwidth});
    }

    if (!have_header)
        throw ApcgParseError(line_no, "missing header: expected 'apcg <name> <cores>'");
    return Apcg(std::move(name), core_count, std::move(arcs));
}

std::string write_apcg(const Apcg& apcg) {
    std::ostringstream out;
    out << "apcg " << apcg.name() << ' ' << apcg.core_count() << '\n';
    for (const Arc& arc : apcg.arcs())
        out << arc.src << ' ' << arc.dst << ' ' << arc.volume << ' '
            << fmt_double(arc.bandwidth) << '\n';
    return out.str();
}

Apcg load_apcg(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("failed reading " + path.string());
    return parse_apcg(buffer.str());
}

void save_apcg(const Apcg& apcg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << write_apcg(apcg);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

} // namespace nocmap
