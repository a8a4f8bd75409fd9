"""From scanned page images to timestamped detections.

Real deployments sit behind a transcription backend: page images go
out with the fixed prompt "what text is in this image?", text comes
back. This demo uses the in-memory mock client, which answers by image
digest, to walk the same road: brighten the scan, transcribe it with a
flaky backend that needs retries, normalise the text, and extract. It
finishes with the annotation loader's screening rules - records missing
a month or year are dropped, and any record whose stored interval does
not equal the recomputed one is flagged and excluded.
"""

import tempfile
from pathlib import Path

from datespan import (
    GrayscaleImage,
    MockTranscriptionClient,
    Page,
    binarize,
    builtin_bespoke_bank,
    image_digest,
    load_annotations,
    scan,
    transcribe,
)

SCAN_TEXT = "Witness statement taken on the 3rd of June 1970 at the parish hall."


def main() -> None:
    # A 4x2 scrap of a scanned page: faint strokes under 100, bright
    # paper above it. Binarising lifts the paper to pure white and
    # leaves the strokes alone, and doing it twice changes nothing.
    image = GrayscaleImage(4, 2, (30, 180, 99, 255, 101, 0, 150, 100))
    cleaned = binarize(image)
    print("pixels before:", image.pixels)
    print("pixels after: ", cleaned.pixels)
    assert binarize(cleaned) == cleaned

    # The mock backend knows this image and fails twice before
    # answering, as a congested service would.
    client = MockTranscriptionClient(
        fixtures={image_digest(cleaned.to_bytes()): SCAN_TEXT},
        fail_times=2,
    )
    text = transcribe(cleaned, client, retries=3)
    print(f"\ntranscribed after {client.calls} attempts: {text!r}")

    page = Page.from_transcription("doc-1", "doc-1/p1", text)
    print(f"normalised:                {page.preprocessed_text!r}")
    for hit in scan(page.preprocessed_text, builtin_bespoke_bank(), page.page_id):
        print(f"found {hit.matched_text!r} -> [{hit.range.start}, {hit.range.end})")

    # Screening: one good record, one missing its year, one whose
    # stored interval disagrees with the recomputed one.
    lines = [
        '{"format":"annotations","version":1}',
        '{"page_id":"doc-1/p1","span":[31,44],"day":3,"suffix":"rd",'
        '"month":6,"year":1970,"start":13219200,"end":13305600}',
        '{"page_id":"doc-1/p2","span":[0,6],"day":9,"suffix":null,'
        '"month":2,"year":null,"start":0,"end":86400}',
        '{"page_id":"doc-1/p3","span":[0,11],"day":1,"suffix":null,'
        '"month":1,"year":1970,"start":0,"end":172800}',
    ]
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "annotations.jsonl"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        loaded = load_annotations(path)
    print(f"\naccepted {len(loaded.annotations)} of 3 records; "
          f"{loaded.missing_parts} missing a part, {len(loaded.flagged)} flagged:")
    for line_no, why in loaded.flagged:
        print(f"  line {line_no}: {why}")


if __name__ == "__main__":
    main()
