#!/usr/bin/env python3
"""Regenerates src/unicode_tables.cpp from Python's unicodedata.

Run from the repository root:

    python3 scripts/gen_unicode_tables.py > src/unicode_tables.cpp

The tables cover:
  * whitespace code points (str.isspace)
  * punctuation/symbol code points (general category P* or S*)
  * combining marks (Mn, Mc, Me)
  * nonzero canonical combining classes (for canonical reordering)
  * NFKD decompositions, excluding Hangul syllables (decomposed
    algorithmically at runtime)
  * simple one-to-one lowercase mappings
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_BASE, HANGUL_END = 0xAC00, 0xD7A3


def codepoints():
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        yield cp


def to_ranges(cps):
    ranges = []
    for cp in cps:
        if ranges and cp == ranges[-1][1] + 1:
            ranges[-1][1] = cp
        else:
            ranges.append([cp, cp])
    return ranges


def emit_ranges(out, name, ranges):
    out.write(f"const CpRange {name}[] = {{\n")
    for i in range(0, len(ranges), 6):
        row = ", ".join(f"{{0x{lo:x}, 0x{hi:x}}}" for lo, hi in ranges[i : i + 6])
        out.write(f"    {row},\n")
    out.write("};\n")
    out.write(f"const std::size_t {name}Count = {len(ranges)};\n\n")


def main(out):
    ws = [cp for cp in codepoints() if chr(cp).isspace()]
    punct_sym = [cp for cp in codepoints() if unicodedata.category(chr(cp))[0] in "PS"]
    marks = [cp for cp in codepoints() if unicodedata.category(chr(cp)) in ("Mn", "Mc", "Me")]
    ccc = [(cp, unicodedata.combining(chr(cp))) for cp in codepoints() if unicodedata.combining(chr(cp)) != 0]

    decomp = []
    pool = []
    for cp in codepoints():
        if HANGUL_BASE <= cp <= HANGUL_END:
            continue
        norm = unicodedata.normalize("NFKD", chr(cp))
        if norm != chr(cp):
            decomp.append((cp, len(pool), len(norm)))
            pool.extend(ord(c) for c in norm)

    lower = []
    for cp in codepoints():
        lo = chr(cp).lower()
        if len(lo) == 1 and lo != chr(cp):
            lower.append((cp, ord(lo)))

    out.write("// Generated by scripts/gen_unicode_tables.py")
    out.write(f" (Unicode {unicodedata.unidata_version}). Do not edit.\n")
    out.write('#include "unicode_tables.hpp"\n\n')
    out.write("namespace clinspan::uni::tables {\n\n")

    emit_ranges(out, "kWhitespace", to_ranges(ws))
    emit_ranges(out, "kPunctSymbol", to_ranges(punct_sym))
    emit_ranges(out, "kMark", to_ranges(marks))

    out.write("const CccEntry kCcc[] = {\n")
    for i in range(0, len(ccc), 8):
        row = ", ".join(f"{{0x{cp:x}, {c}}}" for cp, c in ccc[i : i + 8])
        out.write(f"    {row},\n")
    out.write("};\n")
    out.write(f"const std::size_t kCccCount = {len(ccc)};\n\n")

    out.write("const char32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 10):
        row = ", ".join(f"0x{c:x}" for c in pool[i : i + 10])
        out.write(f"    {row},\n")
    out.write("};\n\n")

    out.write("const DecompEntry kDecomp[] = {\n")
    for i in range(0, len(decomp), 5):
        row = ", ".join(f"{{0x{cp:x}, {off}, {ln}}}" for cp, off, ln in decomp[i : i + 5])
        out.write(f"    {row},\n")
    out.write("};\n")
    out.write(f"const std::size_t kDecompCount = {len(decomp)};\n\n")

    out.write("const LowerEntry kLower[] = {\n")
    for i in range(0, len(lower), 6):
        row = ", ".join(f"{{0x{cp:x}, 0x{lo:x}}}" for cp, lo in lower[i : i + 6])
        out.write(f"    {row},\n")
    out.write("};\n")
    out.write(f"const std::size_t kLowerCount = {len(lower)};\n\n")

    out.write("}  // namespace clinspan::uni::tables\n")


if __name__ == "__main__":
    main(sys.stdout)
