#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from the Python unicodedata module.

The tables pin character classification (letters, punctuation, whitespace)
and simple lowercase mapping to one Unicode version so that results do not
drift with the host C library or ICU build.
"""
import sys
import unicodedata

MAX_CP = 0x110000


def ranges_of(predicate):
    ranges = []
    start = None
    for cp in range(MAX_CP):
        if predicate(cp):
            if start is None:
                start = cp
        else:
            if start is not None:
                ranges.append((start, cp - 1))
                start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def is_letter(cp):
    return unicodedata.category(chr(cp)).startswith("L")


def is_punct(cp):
    return unicodedata.category(chr(cp)).startswith("P")


def is_space(cp):
    return chr(cp).isspace()


def lower_pairs():
    pairs = []
    for cp in range(MAX_CP):
        lo = chr(cp).lower()
        # only 1:1 mappings; multi-codepoint lowerings are left unchanged
        if len(lo) == 1 and ord(lo) != cp:
            pairs.append((cp, ord(lo)))
    return pairs


def emit_ranges(out, name, ranges):
    out.write(f"inline constexpr char32_t {name}[][2] = {{\n")
    for i in range(0, len(ranges), 6):
        chunk = ", ".join(f"{{0x{a:X}, 0x{b:X}}}" for a, b in ranges[i : i + 6])
        out.write(f"    {chunk},\n")
    out.write("};\n\n")


def main():
    out = sys.stdout
    out.write("// Generated by scripts/gen_unicode_tables.py -- do not edit.\n")
    out.write(f"// Unicode version: {unicodedata.unidata_version}\n\n")
    emit_ranges(out, "kLetterRanges", ranges_of(is_letter))
    emit_ranges(out, "kPunctRanges", ranges_of(is_punct))
    emit_ranges(out, "kSpaceRanges", ranges_of(is_space))
    pairs = lower_pairs()
    out.write("inline constexpr char32_t kLowerPairs[][2] = {\n")
    for i in range(0, len(pairs), 6):
        chunk = ", ".join(f"{{0x{a:X}, 0x{b:X}}}" for a, b in pairs[i : i + 6])
        out.write(f"    {chunk},\n")
    out.write("};\n")


if __name__ == "__main__":
    main()
