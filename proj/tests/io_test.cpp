#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "affgeo/construct.hpp"
#include "affgeo/io.hpp"

using namespace affgeo;

namespace {

const Field F2 = Field::make(2, 1);

const char* kLinesOfAG22 =
    "affgeo v1\n"
    "field p=2 e=1 modulus=01\n"
    "space kind=affine rank=3\n"
    "block\nrep 0 0\ndir 1 0\n"
    "block\nrep 0 1\ndir 1 0\n"
    "block\nrep 0 0\ndir 1 1\n"
    "block\nrep 0 1\ndir 1 1\n"
    "block\nrep 0 0\ndir 0 1\n"
    "block\nrep 1 0\ndir 0 1\n";

void expect_round_trip(const AnyFamily& fam) {
    const std::string text = render_blocks(fam);
    const AnyFamily back = parse_blocks(text);
    EXPECT_EQ(back, fam);
    EXPECT_EQ(render_blocks(back), text);
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return s.replace(pos, from.size(), to);
}

} // namespace

TEST(BlockFile, ExactRendering) {
    const auto fam = complete_design<AffineFlat>(GeometrySpec::affine(F2, 3), 2);
    EXPECT_EQ(render_blocks(fam), kLinesOfAG22);
}

TEST(BlockFile, ProjectiveOverF4) {
    const auto s = desarguesian_spread(2, 1, 4);
    const std::string text = render_blocks(s);
    EXPECT_EQ(text.substr(0, text.find("block")), "affgeo v1\nfield p=2 e=2 modulus=111\nspace kind=projective rank=2\n");
    EXPECT_NE(text.find("dir 10 01\n"), std::string::npos);
    expect_round_trip(s);
}

TEST(BlockFile, RoundTrips) {
    expect_round_trip(desarguesian_spread(6, 2, 2));
    expect_round_trip(affine_steiner(2, 3, 2));
    expect_round_trip(affine_steiner(2, 2, 3));
    expect_round_trip(affine_poly_code(2, 3, 3, 2));
    expect_round_trip(complete_design<LinearSubspace>(GeometrySpec::projective(Field::of_order(9), 3), 2));
    expect_round_trip(complete_design<AffineFlat>(GeometrySpec::affine(F2, 4), 0));
    expect_round_trip(AffineFamily(GeometrySpec::affine(F2, 4), {}));
}

TEST(BlockFile, RejectsMalformedInput) {
    const std::string good = kLinesOfAG22;
    EXPECT_NO_THROW(parse_blocks(good));
    EXPECT_THROW(parse_blocks(replace_once(good, "affgeo v1", "affgeo v2")), ParseError);
    EXPECT_THROW(parse_blocks(replace_once(good, "modulus=01", "modulus=11")), ParseError);
    EXPECT_THROW(parse_blocks(replace_once(good, "kind=affine", "kind=other")), ParseError);
    EXPECT_THROW(parse_blocks(replace_once(good, "p=2", "p=4")), ParseError);
    // Non-canonical representative: (1,1) is not reduced against direction (1,0).
    EXPECT_THROW(parse_blocks(replace_once(good, "rep 0 1\ndir 1 0", "rep 1 1\ndir 1 0")), ParseError);
    // Non-canonical basis.
    EXPECT_THROW(parse_blocks(replace_once(good, "rep 0 0\ndir 0 1", "rep 0 0\ndir 0 1\ndir 0 1")), ParseError);
    // Blocks out of order.
    EXPECT_THROW(parse_blocks(replace_once(good, "rep 1 0\ndir 0 1", "rep 0 0\ndir 0 1")), ParseError);
    EXPECT_THROW(parse_blocks(replace_once(good, "rep 0 0\ndir 1 0", "rep 0 2\ndir 1 0")), ParseError);
    EXPECT_THROW(parse_blocks(replace_once(good, "rep 0 0\ndir 1 0", "rep 0 0 0\ndir 1 0")), ParseError);
    EXPECT_THROW(parse_blocks(replace_once(good, "\n", "\r\n")), ParseError);
    EXPECT_THROW(parse_blocks(good + "\n"), ParseError);
    EXPECT_THROW(parse_blocks(good + "junk\n"), ParseError);
    EXPECT_THROW(parse_blocks(std::string("")), ParseError);
    // Blocks of mixed rank.
    EXPECT_THROW(parse_blocks(good + "block\nrep 1 1\n"), ParseError);
}

TEST(BlockFile, ReadsFromDisk) {
    const auto dir = std::filesystem::temp_directory_path() / "affgeo_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "s.blk";
    const auto fam = affine_steiner(2, 2, 2);
    write_file_atomic(path, render_blocks(fam));
    EXPECT_EQ(read_block_file(path), AnyFamily(fam));
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    EXPECT_THROW(read_block_file(dir / "missing.blk"), ParseError);
    std::filesystem::remove_all(dir);
}

TEST(ClassicalFile, RoundTrip) {
    const ClassicalDesign d{7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}};
    const std::string text = render_classical(d);
    EXPECT_EQ(text.substr(0, text.find('\n')), "7 7 3");
    EXPECT_EQ(parse_classical(text), d);
    EXPECT_THROW(parse_classical("7 2 3\n0 1 2\n"), ParseError);
    EXPECT_THROW(parse_classical("3 1 3\n0 1 5\n"), ParseError);
    EXPECT_THROW(parse_classical("3 1 3\n0 1\n"), ParseError);
}
