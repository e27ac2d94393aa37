#pragma once
// Fixed-metric bitmap font used for page text rendering. Every glyph
// occupies a 10x13 cell (bit k of a row = pixel at x=k), covering
// printable ASCII 32..126. Rendering this table is what keeps page
// rasters byte-reproducible: no system font is ever consulted.

#include <array>
#include <cstdint>

namespace scrapmem::font {

inline constexpr int kGlyphWidth = 10;
inline constexpr int kGlyphHeight = 13;
inline constexpr int kFirstChar = 32;
inline constexpr int kLastChar = 126;
inline constexpr char kFontId[] = "cellfont-10x13";

inline constexpr std::array<std::array<std::uint16_t, 13>, 95> kGlyphs = {{
    {{0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // ' '
    {{0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000, 0x002, 0x000, 0x000, 0x000, 0x000}},  // '!'
    {{0x000, 0x00a, 0x00a, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '"'
    {{0x000, 0x000, 0x028, 0x0fe, 0x024, 0x024, 0x07e, 0x024, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '#'
    {{0x008, 0x03e, 0x022, 0x002, 0x00c, 0x030, 0x060, 0x062, 0x03e, 0x008, 0x000, 0x000, 0x000}},  // '$'
    {{0x000, 0x0ce, 0x048, 0x028, 0x016, 0x0f8, 0x0a8, 0x0a4, 0x0c2, 0x000, 0x000, 0x000, 0x000}},  // '%'
    {{0x000, 0x01c, 0x022, 0x014, 0x00c, 0x05e, 0x072, 0x062, 0x0dc, 0x000, 0x000, 0x000, 0x000}},  // '&'
    {{0x000, 0x002, 0x002, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '''
    {{0x018, 0x008, 0x004, 0x004, 0x004, 0x004, 0x004, 0x004, 0x008, 0x018, 0x000, 0x000, 0x000}},  // '('
    {{0x008, 0x010, 0x010, 0x010, 0x010, 0x010, 0x010, 0x010, 0x018, 0x00c, 0x000, 0x000, 0x000}},  // ')'
    {{0x004, 0x006, 0x00e, 0x00e, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '*'
    {{0x000, 0x000, 0x008, 0x008, 0x008, 0x07e, 0x008, 0x008, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '+'
    {{0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x002, 0x000, 0x000, 0x000, 0x000}},  // ','
    {{0x000, 0x000, 0x000, 0x000, 0x000, 0x01e, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '-'
    {{0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x002, 0x000, 0x000, 0x000, 0x000}},  // '.'
    {{0x010, 0x010, 0x008, 0x008, 0x00c, 0x004, 0x004, 0x002, 0x002, 0x001, 0x000, 0x000, 0x000}},  // '/'
    {{0x000, 0x03c, 0x032, 0x072, 0x06a, 0x06a, 0x062, 0x026, 0x01c, 0x000, 0x000, 0x000, 0x000}},  // '0'
    {{0x000, 0x00c, 0x00e, 0x008, 0x008, 0x008, 0x008, 0x008, 0x07e, 0x000, 0x000, 0x000, 0x000}},  // '1'
    {{0x000, 0x03c, 0x022, 0x020, 0x030, 0x018, 0x00c, 0x006, 0x03e, 0x000, 0x000, 0x000, 0x000}},  // '2'
    {{0x000, 0x03e, 0x010, 0x018, 0x01c, 0x020, 0x060, 0x022, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // '3'
    {{0x000, 0x030, 0x038, 0x034, 0x034, 0x032, 0x07f, 0x030, 0x030, 0x000, 0x000, 0x000, 0x000}},  // '4'
    {{0x000, 0x03e, 0x002, 0x002, 0x03e, 0x020, 0x060, 0x022, 0x01c, 0x000, 0x000, 0x000, 0x000}},  // '5'
    {{0x000, 0x018, 0x008, 0x00c, 0x03e, 0x062, 0x062, 0x022, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // '6'
    {{0x000, 0x03e, 0x020, 0x030, 0x010, 0x018, 0x008, 0x008, 0x004, 0x000, 0x000, 0x000, 0x000}},  // '7'
    {{0x000, 0x03e, 0x022, 0x022, 0x03c, 0x022, 0x062, 0x022, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // '8'
    {{0x000, 0x03e, 0x022, 0x062, 0x022, 0x03c, 0x010, 0x008, 0x00c, 0x000, 0x000, 0x000, 0x000}},  // '9'
    {{0x000, 0x000, 0x000, 0x000, 0x002, 0x000, 0x000, 0x000, 0x002, 0x000, 0x000, 0x000, 0x000}},  // ':'
    {{0x000, 0x000, 0x000, 0x000, 0x002, 0x000, 0x000, 0x000, 0x002, 0x002, 0x000, 0x000, 0x000}},  // ';'
    {{0x000, 0x000, 0x010, 0x008, 0x006, 0x003, 0x006, 0x018, 0x010, 0x000, 0x000, 0x000, 0x000}},  // '<'
    {{0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x01e, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '='
    {{0x000, 0x000, 0x002, 0x006, 0x018, 0x010, 0x008, 0x006, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '>'
    {{0x000, 0x01e, 0x022, 0x030, 0x010, 0x008, 0x008, 0x000, 0x008, 0x000, 0x000, 0x000, 0x000}},  // '?'
    {{0x000, 0x078, 0x084, 0x112, 0x16a, 0x14a, 0x14a, 0x1fa, 0x002, 0x0dc, 0x000, 0x000, 0x000}},  // '@'
    {{0x000, 0x018, 0x018, 0x024, 0x024, 0x026, 0x07e, 0x042, 0x0c1, 0x000, 0x000, 0x000, 0x000}},  // 'A'
    {{0x000, 0x03e, 0x042, 0x042, 0x03e, 0x062, 0x042, 0x042, 0x03e, 0x000, 0x000, 0x000, 0x000}},  // 'B'
    {{0x000, 0x03c, 0x042, 0x002, 0x002, 0x002, 0x042, 0x066, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // 'C'
    {{0x000, 0x03e, 0x042, 0x042, 0x042, 0x042, 0x042, 0x062, 0x03e, 0x000, 0x000, 0x000, 0x000}},  // 'D'
    {{0x000, 0x03e, 0x002, 0x002, 0x03e, 0x002, 0x002, 0x002, 0x03e, 0x000, 0x000, 0x000, 0x000}},  // 'E'
    {{0x000, 0x03e, 0x002, 0x002, 0x006, 0x03e, 0x002, 0x002, 0x002, 0x000, 0x000, 0x000, 0x000}},  // 'F'
    {{0x000, 0x03c, 0x042, 0x002, 0x002, 0x042, 0x042, 0x046, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // 'G'
    {{0x000, 0x042, 0x042, 0x042, 0x07e, 0x042, 0x042, 0x042, 0x042, 0x000, 0x000, 0x000, 0x000}},  // 'H'
    {{0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000, 0x000, 0x000, 0x000}},  // 'I'
    {{0x000, 0x07e, 0x060, 0x060, 0x060, 0x060, 0x020, 0x022, 0x01e, 0x000, 0x000, 0x000, 0x000}},  // 'J'
    {{0x000, 0x022, 0x012, 0x00e, 0x006, 0x00e, 0x01a, 0x032, 0x062, 0x000, 0x000, 0x000, 0x000}},  // 'K'
    {{0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x03e, 0x000, 0x000, 0x000, 0x000}},  // 'L'
    {{0x000, 0x082, 0x0c6, 0x0ce, 0x0aa, 0x0ba, 0x092, 0x082, 0x082, 0x000, 0x000, 0x000, 0x000}},  // 'M'
    {{0x000, 0x042, 0x046, 0x04e, 0x04a, 0x052, 0x072, 0x062, 0x042, 0x000, 0x000, 0x000, 0x000}},  // 'N'
    {{0x000, 0x03c, 0x042, 0x042, 0x042, 0x042, 0x042, 0x066, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // 'O'
    {{0x000, 0x03e, 0x042, 0x042, 0x062, 0x03e, 0x002, 0x002, 0x002, 0x000, 0x000, 0x000, 0x000}},  // 'P'
    {{0x000, 0x03c, 0x042, 0x042, 0x042, 0x042, 0x042, 0x066, 0x07c, 0x040, 0x000, 0x000, 0x000}},  // 'Q'
    {{0x000, 0x03e, 0x042, 0x042, 0x062, 0x03e, 0x022, 0x062, 0x042, 0x000, 0x000, 0x000, 0x000}},  // 'R'
    {{0x000, 0x03e, 0x022, 0x002, 0x00c, 0x030, 0x060, 0x062, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // 'S'
    {{0x000, 0x03f, 0x008, 0x008, 0x008, 0x008, 0x008, 0x008, 0x008, 0x000, 0x000, 0x000, 0x000}},  // 'T'
    {{0x000, 0x042, 0x042, 0x042, 0x042, 0x042, 0x042, 0x066, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // 'U'
    {{0x000, 0x042, 0x042, 0x022, 0x024, 0x024, 0x014, 0x018, 0x018, 0x000, 0x000, 0x000, 0x000}},  // 'V'
    {{0x000, 0x102, 0x182, 0x092, 0x0b2, 0x0ae, 0x0ec, 0x0cc, 0x044, 0x000, 0x000, 0x000, 0x000}},  // 'W'
    {{0x000, 0x062, 0x026, 0x01c, 0x018, 0x018, 0x034, 0x022, 0x043, 0x000, 0x000, 0x000, 0x000}},  // 'X'
    {{0x000, 0x042, 0x022, 0x024, 0x01c, 0x018, 0x008, 0x008, 0x008, 0x000, 0x000, 0x000, 0x000}},  // 'Y'
    {{0x000, 0x03e, 0x020, 0x010, 0x008, 0x00c, 0x004, 0x002, 0x07f, 0x000, 0x000, 0x000, 0x000}},  // 'Z'
    {{0x006, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x006, 0x000, 0x000}},  // '['
    {{0x003, 0x002, 0x002, 0x004, 0x004, 0x008, 0x008, 0x008, 0x010, 0x010, 0x000, 0x000, 0x000}},  // backslash
    {{0x007, 0x004, 0x004, 0x004, 0x004, 0x004, 0x004, 0x004, 0x004, 0x004, 0x007, 0x000, 0x000}},  // ']'
    {{0x000, 0x00e, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '^'
    {{0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '_'
    {{0x002, 0x004, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '`'
    {{0x000, 0x000, 0x000, 0x01e, 0x032, 0x038, 0x022, 0x032, 0x03e, 0x000, 0x000, 0x000, 0x000}},  // 'a'
    {{0x000, 0x002, 0x002, 0x03e, 0x022, 0x022, 0x022, 0x022, 0x01e, 0x000, 0x000, 0x000, 0x000}},  // 'b'
    {{0x000, 0x000, 0x000, 0x01e, 0x022, 0x002, 0x002, 0x022, 0x01c, 0x000, 0x000, 0x000, 0x000}},  // 'c'
    {{0x000, 0x020, 0x020, 0x03e, 0x022, 0x022, 0x022, 0x022, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // 'd'
    {{0x000, 0x000, 0x000, 0x01c, 0x022, 0x032, 0x002, 0x002, 0x01c, 0x000, 0x000, 0x000, 0x000}},  // 'e'
    {{0x008, 0x004, 0x006, 0x00f, 0x006, 0x006, 0x006, 0x006, 0x004, 0x000, 0x000, 0x000, 0x000}},  // 'f'
    {{0x000, 0x000, 0x000, 0x03e, 0x022, 0x022, 0x022, 0x022, 0x03c, 0x020, 0x036, 0x008, 0x000}},  // 'g'
    {{0x000, 0x002, 0x002, 0x03e, 0x022, 0x022, 0x022, 0x022, 0x022, 0x000, 0x000, 0x000, 0x000}},  // 'h'
    {{0x000, 0x002, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000, 0x000, 0x000, 0x000}},  // 'i'
    {{0x000, 0x002, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x003, 0x000, 0x000}},  // 'j'
    {{0x000, 0x002, 0x002, 0x012, 0x00a, 0x006, 0x00e, 0x01a, 0x032, 0x000, 0x000, 0x000, 0x000}},  // 'k'
    {{0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000, 0x000, 0x000, 0x000}},  // 'l'
    {{0x000, 0x000, 0x000, 0x1de, 0x132, 0x222, 0x222, 0x222, 0x222, 0x000, 0x000, 0x000, 0x000}},  // 'm'
    {{0x000, 0x000, 0x000, 0x03e, 0x022, 0x022, 0x022, 0x022, 0x022, 0x000, 0x000, 0x000, 0x000}},  // 'n'
    {{0x000, 0x000, 0x000, 0x01c, 0x022, 0x022, 0x022, 0x022, 0x01c, 0x000, 0x000, 0x000, 0x000}},  // 'o'
    {{0x000, 0x000, 0x000, 0x03e, 0x022, 0x022, 0x022, 0x022, 0x01e, 0x002, 0x002, 0x000, 0x000}},  // 'p'
    {{0x000, 0x000, 0x000, 0x03e, 0x022, 0x022, 0x022, 0x022, 0x03c, 0x020, 0x020, 0x000, 0x000}},  // 'q'
    {{0x000, 0x000, 0x000, 0x00e, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000, 0x000, 0x000, 0x000}},  // 'r'
    {{0x000, 0x000, 0x000, 0x01e, 0x002, 0x006, 0x018, 0x010, 0x01e, 0x000, 0x000, 0x000, 0x000}},  // 's'
    {{0x000, 0x002, 0x006, 0x00f, 0x002, 0x002, 0x002, 0x006, 0x00c, 0x000, 0x000, 0x000, 0x000}},  // 't'
    {{0x000, 0x000, 0x000, 0x022, 0x022, 0x022, 0x022, 0x022, 0x03c, 0x000, 0x000, 0x000, 0x000}},  // 'u'
    {{0x000, 0x000, 0x000, 0x023, 0x032, 0x012, 0x014, 0x00c, 0x008, 0x000, 0x000, 0x000, 0x000}},  // 'v'
    {{0x000, 0x000, 0x000, 0x112, 0x132, 0x0aa, 0x0aa, 0x0cc, 0x044, 0x000, 0x000, 0x000, 0x000}},  // 'w'
    {{0x000, 0x000, 0x000, 0x032, 0x016, 0x00c, 0x00c, 0x016, 0x022, 0x000, 0x000, 0x000, 0x000}},  // 'x'
    {{0x000, 0x000, 0x000, 0x023, 0x032, 0x012, 0x014, 0x00c, 0x008, 0x004, 0x004, 0x000, 0x000}},  // 'y'
    {{0x000, 0x000, 0x000, 0x01e, 0x018, 0x008, 0x004, 0x002, 0x01e, 0x000, 0x000, 0x000, 0x000}},  // 'z'
    {{0x00c, 0x004, 0x002, 0x002, 0x002, 0x003, 0x002, 0x002, 0x002, 0x004, 0x00c, 0x000, 0x000}},  // '{'
    {{0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000, 0x000}},  // '|'
    {{0x003, 0x004, 0x004, 0x004, 0x004, 0x008, 0x004, 0x004, 0x004, 0x006, 0x003, 0x000, 0x000}},  // '}'
    {{0x000, 0x000, 0x000, 0x000, 0x000, 0x03e, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000}},  // '~'
}};

// Row bitmap for a character; anything outside the table renders as '?'.
inline const std::array<std::uint16_t, 13>& glyph(char c) {
    int code = static_cast<unsigned char>(c);
    if (code < kFirstChar || code > kLastChar) code = '?';
    return kGlyphs[static_cast<std::size_t>(code - kFirstChar)];
}

}  // namespace scrapmem::font
