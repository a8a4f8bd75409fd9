"""Finding dates in prose with a pattern bank.

A bank is an ordered list of regexes, each carrying a decomposition
map that turns the matched string back into day, month, and year. The
scanner normalises range phrasing first ("3rd of June to the 2nd of
July" becomes "3rd June - 2nd July"), then walks the bank in priority
order, keeping the leftmost-longest hit and masking it so later, looser
patterns cannot double-report the same characters. Syntactic matches
that do not name a real calendar date (a 31st of February, a day
wearing the wrong ordinal suffix) are discarded during decomposition.
"""

from datespan import builtin_bespoke_bank, preprocess_text, scan

PAGE = """\
The survey began on the 3rd of June to the 2nd of July 1970, after the
committee met in Jan 1970. Earlier drafts cite 12/01/70 and a window of
12 - 14.06.1970 for the field work. A forged entry claims 31/02/2001,
and the ledger number 123/456/78910 is not a date at all.
"""


def main() -> None:
    text = preprocess_text(PAGE)
    print("normalised page:")
    for line in text.splitlines():
        print(f"  {line}")

    bank = builtin_bespoke_bank()
    print(f"\nscanning with the {bank.provenance!r} bank "
          f"({len(bank.entries)} patterns):\n")
    for hit in scan(text, bank, page_id="survey-notes"):
        start, end = hit.span
        where = f"[{start:>3}:{end:>3}]"
        if hit.range is None:
            reading = "located only"
        else:
            reading = f"[{hit.range.start}, {hit.range.end})"
        print(f"  {where} {hit.matched_text!r:28} {hit.label:12} {reading}")

    print("\nthe forged 31/02/2001 was rejected as a calendar date, though")
    print("this deliberately loose bank still reads 'February 2001' out of")
    print("its tail; the ledger number matched nothing at all. A bank")
    print("synthesized for the document's own era avoids even that tail —")
    print("see the next demo.")


if __name__ == "__main__":
    main()
