#!/usr/bin/env python3
"""Regenerates the 40-sentence filter fixture corpus from the sentence table.

The golden TSVs are hand-written from the same table; this script only
assembles corpus.jsonl so sentence text and goldens cannot drift apart.
"""
import json
import pathlib

HERE = pathlib.Path(__file__).parent

# (article_id, source, published, [sentences])
ARTICLES = [
    ("flt-001", "Morning Chronicle", "2021-03-01", [
        "Alia Khan said Badrul Amin would resign.",
        "Chitra Sen met Dipu Raja at the port.",
        '"We will act," said Eshan Ali beside Farzana Huq.',
        "Karim praised the new budget.",
        "Rahim told Rahman the accounts were closed.",
    ]),
    ("flt-002", "Daily Harbor", "2021-03-02", [
        "Mahfuz Anam spoke with Alia Khan yesterday.",
        '"Badrul Amin and Chitra Sen must go," read the banner.',
        "Dipu Raja asked Eshan Ali about the tender.",
        "The committee dismissed the claims outright.",
        "Farzana Huq added that Karim agreed.",
    ]),
    ("flt-003", "Morning Chronicle", "2021-03-03", [
        '"Enough," Rahim said, glancing at Rahman.',
        "Mahfuz and Anam were seen separately.",
        "Alia Khan declared the session open with Badrul Amin.",
        "Chitra Sen smiled.",
        "Dipu Raja says Eshan Ali is wrong.",
    ]),
    ("flt-004", "Daily Harbor", "2021-03-04", [
        "Farzana Huq alleged Karim took the funds.",
        "Rahim watched Rahman leave the hall.",
        '"I saw it myself," Mahfuz Anam told Alia Khan.',
        # "Sen." hits the abbreviation guard, so the last two fragments
        # segment as one sentence (index 3) with three entities.
        "Badrul Amin whispered to Chitra Sen.",
        "Dipu Raja said it was settled.",
    ]),
    ("flt-005", "Morning Chronicle", "2021-03-05", [
        "Eshan Ali speaks for Farzana Huq on this matter.",
        "Karim and Rahim signed the register.",
        "Rahman asks Mahfuz Anam for patience.",
        '"No comment," said Alia Khan.',
        "Badrul Amin tells Chitra Sen the vote is near.",
    ]),
    ("flt-006", "Daily Harbor", "2021-03-06", [
        "Dipu Raja's lawyer said Eshan Ali must appear.",
        "Farzana Huq said Karim and Rahim colluded.",
        "Rahman nodded at Mahfuz.",
        '"They knew," Alia Khan says of Badrul Amin.',
        "Chitra Sen saw Dipu Raja smile.",
    ]),
    ("flt-007", "Morning Chronicle", "2021-03-07", [
        "Eshan Ali kept adding pressure until Farzana Huq relented.",
        "Karim quoted a letter from Rahim.",
        "Rahman and Mahfuz Anam spoke after the session.",
        "Alia Khan arrived late.",
        "Badrul Amin alleges Chitra Sen blocked the inquiry.",
    ]),
    ("flt-008", "Daily Harbor", "2021-03-08", [
        '"Stop," Dipu Raja told Eshan Ali.',
        "Farzana Huq heard Karim on the radio.",
        "With Rahim saying nothing, Rahman pressed on.",
        "Mahfuz Anam and Alia Khan left together.",
        "Badrul Amin spoke.",
    ]),
]


def main():
    lines = []
    total = 0
    for article_id, source, published, sentences in ARTICLES:
        total += len(sentences)
        lines.append(json.dumps({
            "article_id": article_id,
            "source": source,
            "published": published,
            "headline": f"Fixture article {article_id}",
            "body": " ".join(sentences),
        }, ensure_ascii=False, sort_keys=True))
    (HERE / "corpus.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(ARTICLES)} articles, {total} sentences")


if __name__ == "__main__":
    main()
