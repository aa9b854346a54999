#pragma once

// Text formats: block files (families of flats) and classical design files.
//
// Block file, line oriented, LF endings:
//
//   affgeo v1
//   field p=<p> e=<e> modulus=<digits>
//   space kind=<affine|projective> rank=<n>
//   block
//   rep <coords>          (affine only)
//   dir <coords>          (one per basis row)
//   ...
//
// Coordinates are space-separated element digit strings. Blocks appear in
// canonical order and only canonical forms are accepted.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "affgeo/design.hpp"
#include "affgeo/error.hpp"
#include "affgeo/family.hpp"
#include "affgeo/flatspace.hpp"

namespace affgeo {

using AnyFamily = std::variant<AffineFamily, ProjectiveFamily>;

inline constexpr const char* kBlockFileMagic = "affgeo v1";

namespace detail {

inline std::string digit_string(const std::vector<int>& d) {
    std::string s;
    for (int x : d) s.push_back(static_cast<char>(x < 10 ? '0' + x : 'a' + x - 10));
    return s;
}

inline std::string render_row(const Field& f, const Row& r) { return VectorFq(f, r).to_string(); }

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

inline std::string expect_key(const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0) throw ParseError("expected '" + key + "=...', got '" + token + "'");
    return token.substr(key.size() + 1);
}

inline int parse_int(const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw ParseError("not an integer: '" + s + "'");
    return v;
}

inline Row parse_row(const Field& f, const std::vector<std::string>& words, int d) {
    if (static_cast<int>(words.size()) != d + 1)
        throw ParseError("expected " + std::to_string(d) + " coordinates, got " + std::to_string(words.size() - 1));
    Row r;
    for (std::size_t i = 1; i < words.size(); ++i) r.push_back(f.parse(words[i]));
    return r;
}

} // namespace detail

inline std::string render_header(const GeometrySpec& g) {
    std::ostringstream os;
    os << kBlockFileMagic << '\n'
       << "field p=" << g.field.characteristic() << " e=" << g.field.degree()
       << " modulus=" << detail::digit_string(g.field.modulus()) << '\n'
       << "space kind=" << to_string(g.kind) << " rank=" << g.rank << '\n';
    return os.str();
}

inline std::string render_blocks(const AffineFamily& fam) {
    std::ostringstream os;
    os << render_header(fam.geometry());
    const Field& f = fam.geometry().field;
    for (const auto& b : fam.blocks()) {
        os << "block\n";
        if (b.is_empty()) continue;
        os << "rep " << detail::render_row(f, b.rep_coords()) << '\n';
        for (const auto& r : b.dir().basis()) os << "dir " << detail::render_row(f, r) << '\n';
    }
    return os.str();
}

inline std::string render_blocks(const ProjectiveFamily& fam) {
    std::ostringstream os;
    os << render_header(fam.geometry());
    const Field& f = fam.geometry().field;
    for (const auto& b : fam.blocks()) {
        os << "block\n";
        for (const auto& r : b.basis()) os << "dir " << detail::render_row(f, r) << '\n';
    }
    return os.str();
}

inline std::string render_blocks(const AnyFamily& fam) {
    return std::visit([](const auto& f) { return render_blocks(f); }, fam);
}

inline AnyFamily parse_blocks(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') throw ParseError("CRLF line endings are not accepted");
        lines.push_back(line);
    }
    if (lines.size() < 3 || lines[0] != kBlockFileMagic) throw ParseError("missing 'affgeo v1' header");

    const auto fw = detail::split_ws(lines[1]);
    if (fw.size() != 4 || fw[0] != "field") throw ParseError("malformed field line");
    const int p = detail::parse_int(detail::expect_key(fw[1], "p"));
    const int e = detail::parse_int(detail::expect_key(fw[2], "e"));
    Field f;
    try {
        f = Field::make(p, e);
    } catch (const InvalidArgument& ex) {
        throw ParseError(std::string("unsupported field: ") + ex.what());
    }
    if (detail::expect_key(fw[3], "modulus") != detail::digit_string(f.modulus()))
        throw ParseError("modulus differs from the built-in modulus for this field");

    const auto sw = detail::split_ws(lines[2]);
    if (sw.size() != 3 || sw[0] != "space") throw ParseError("malformed space line");
    const std::string kind = detail::expect_key(sw[1], "kind");
    const int rank = detail::parse_int(detail::expect_key(sw[2], "rank"));
    if (rank < 1) throw ParseError("rank must be >= 1");
    if (kind != "affine" && kind != "projective") throw ParseError("kind must be affine or projective");
    const bool affine = kind == "affine";
    const GeometrySpec g = GeometrySpec::make(affine ? GeometryKind::affine : GeometryKind::projective, f, rank);
    const int d = g.ambient_dim();

    struct RawBlock {
        std::optional<Row> rep;
        std::vector<Row> dirs;
    };
    std::vector<RawBlock> raw;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const auto w = detail::split_ws(lines[i]);
        if (w.empty()) throw ParseError("blank line " + std::to_string(i + 1));
        if (w[0] == "block" && w.size() == 1) {
            raw.emplace_back();
        } else if (raw.empty()) {
            throw ParseError("data before the first 'block' line");
        } else if (w[0] == "rep") {
            if (!affine) throw ParseError("'rep' line in a projective file");
            if (raw.back().rep || !raw.back().dirs.empty()) throw ParseError("'rep' must come first in a block");
            raw.back().rep = detail::parse_row(f, w, d);
        } else if (w[0] == "dir") {
            if (affine && !raw.back().rep) throw ParseError("'dir' before 'rep' in an affine block");
            raw.back().dirs.push_back(detail::parse_row(f, w, d));
        } else {
            throw ParseError("unexpected line " + std::to_string(i + 1) + ": '" + lines[i] + "'");
        }
    }

    auto check_canonical = [](bool ok) {
        if (!ok) throw ParseError("block is not in canonical form");
    };
    auto check_sorted = [](const auto& blocks) {
        for (std::size_t i = 1; i < blocks.size(); ++i)
            if (!(blocks[i - 1] < blocks[i])) throw ParseError("blocks are not in strictly increasing canonical order");
    };
    try {
        if (affine) {
            std::vector<AffineFlat> blocks;
            for (auto& b : raw) {
                if (!b.rep) {
                    blocks.push_back(AffineFlat::empty(f, d));
                    continue;
                }
                LinearSubspace dir(f, d, b.dirs);
                check_canonical(dir.basis() == b.dirs);
                auto flat = AffineFlat::coset(VectorFq(f, *b.rep), std::move(dir));
                check_canonical(flat.rep_coords() == *b.rep);
                blocks.push_back(std::move(flat));
            }
            check_sorted(blocks);
            return AffineFamily(g, std::move(blocks));
        }
        std::vector<LinearSubspace> blocks;
        for (auto& b : raw) {
            LinearSubspace u(f, d, b.dirs);
            check_canonical(u.basis() == b.dirs);
            blocks.push_back(std::move(u));
        }
        check_sorted(blocks);
        return ProjectiveFamily(g, std::move(blocks));
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidArgument& ex) {
        throw ParseError(ex.what());
    }
}

inline AnyFamily parse_blocks(const std::string& text) {
    std::istringstream is(text);
    return parse_blocks(is);
}

inline AnyFamily read_block_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return parse_blocks(in);
}

/// "v b k" header, then one sorted index list per block.
inline std::string render_classical(const ClassicalDesign& d) {
    std::ostringstream os;
    os << d.v << ' ' << d.blocks.size() << ' ' << d.block_size() << '\n';
    for (const auto& b : d.blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
        os << '\n';
    }
    return os.str();
}

inline ClassicalDesign parse_classical(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw ParseError("empty classical design file");
    const auto hw = detail::split_ws(header);
    if (hw.size() != 3) throw ParseError("classical header must be 'v b k'");
    ClassicalDesign d{detail::parse_int(hw[0]), {}};
    const int b = detail::parse_int(hw[1]), k = detail::parse_int(hw[2]);
    for (std::string line; std::getline(is, line);) {
        std::vector<int> blk;
        for (const auto& w : detail::split_ws(line)) {
            const int x = detail::parse_int(w);
            if (x < 0 || x >= d.v) throw ParseError("point index out of range");
            blk.push_back(x);
        }
        if (static_cast<int>(blk.size()) != k) throw ParseError("block of wrong size");
        d.blocks.push_back(std::move(blk));
    }
    if (static_cast<int>(d.blocks.size()) != b) throw ParseError("block count differs from header");
    return d;
}

/// Writes through a temporary file in the same directory, then renames.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << data;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace affgeo
