#include <gtest/gtest.h>

#include "satdmine/io.hpp"
#include "satdmine/text.hpp"
#include "test_support.hpp"

using namespace satdmine;

TEST(Text, SanitizeKeepsValidUtf8) {
    EXPECT_EQ(text::sanitize_utf8("caf\xC3\xA9"), "caf\xC3\xA9");
    EXPECT_EQ(text::sanitize_utf8("a\xFF" "b"), "a\xEF\xBF\xBD" "b");
    EXPECT_EQ(text::sanitize_utf8("\xC3"), "\xEF\xBF\xBD");
}

TEST(Text, SplitLinesDropsCarriageReturnsAndFinalNewline) {
    EXPECT_EQ(text::split_lines("a\r\nb\n"), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(text::split_lines("a\n\nb"), (std::vector<std::string>{"a", "", "b"}));
    EXPECT_TRUE(text::split_lines("").empty());
}

TEST(Text, TrimAndLower) {
    EXPECT_EQ(text::trim("  x y \t"), "x y");
    EXPECT_EQ(text::to_lower_ascii("TODO Fix"), "todo fix");
}

TEST(Text, StatementPunctuationBecomesSpace) {
    EXPECT_EQ(text::split_whitespace(text::strip_statement_punctuation("set(X \"a#b\") <tag/>=1")),
              (std::vector<std::string>{"set", "X", "a", "b", "tag", "1"}));
    // U+2014 EM DASH is punctuation; case is preserved
    EXPECT_EQ(text::split_whitespace(text::strip_statement_punctuation("Foo\xE2\x80\x94" "Bar")),
              (std::vector<std::string>{"Foo", "Bar"}));
}

TEST(Csv, EscapeAndParseRoundTrip) {
    io::CsvWriter w({"a", "b"});
    w.add_row({"plain", "with,comma"});
    w.add_row({"quote\"inside", "line\nbreak"});
    const auto rows = io::parse_csv(w.str());
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1][1], "with,comma");
    EXPECT_EQ(rows[2][0], "quote\"inside");
    EXPECT_EQ(rows[2][1], "line\nbreak");
}

TEST(Csv, RowWidthMustMatchHeader) {
    io::CsvWriter w({"a", "b"});
    EXPECT_THROW(w.add_row({"only one"}), Error);
}

TEST(Io, FormatFixedNormalizesNegativeZero) {
    EXPECT_EQ(io::format_fixed(-0.0), "0.000000");
    EXPECT_EQ(io::format_fixed(0.6482142857), "0.648214");
}

TEST(Io, Sha256KnownVector) {
    EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, WriteCreatesParentsAndReadsBack) {
    satdmine::testing::TempDir tmp;
    const auto p = tmp / "a/b/c.txt";
    io::write_file(p, "x\ny\n");
    EXPECT_EQ(io::read_file(p), "x\ny\n");
    EXPECT_THROW(io::read_file(tmp / "missing"), IoError);
}
