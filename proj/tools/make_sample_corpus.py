#!/usr/bin/env python3
"""Regenerates the bundled sample corpus under data/sample/.

Deterministic by construction (no RNG): 60 articles over 2021 from two
sources. A 6-person clique is planted in one April statement over a sparse
background, so the full-corpus top core is exactly the planted six and their
core rank jumps from 0 to 5 at period 4. The script rebuilds the expected
co-occurrence graph from its own article table and fails if the planted
structure does not dominate.
"""
import itertools
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "sample"

ELITE = ["Farida Karim", "Nusrat Jahan", "Rafiq Mollah", "Salma Akter",
         "Tanvir Hossain", "Zahid Noor"]

TRIANGLES = {
    1: ["Abir Das", "Bashir Uddin", "Chandan Roy"],
    2: ["Dilara Begum", "Enamul Haque", "Farhan Kabir"],
    3: ["Gita Rani", "Habib Mia", "Iqbal Syed"],
    4: ["Jamila Khatun", "Kamrul Islam", "Laila Arju"],
    7: ["Monir Sheikh", "Nasrin Sultana", "Omar Faruk"],
    9: ["Parvin Akhtar", "Qadir Bepari", "Rina Saha"],
}

LOOSE = ["Sohel Rana", "Tania Ahmed", "Arman Chowdhury"]

FILLER = [
    "The hearing resumed after a short recess.",
    "Officials reviewed the budget line by line.",
    "The committee toured the northern districts.",
    "Exports rose for the third straight quarter.",
    "The gallery emptied before the final vote.",
    "A revised schedule was posted at the gate.",
    "The auditors requested further records.",
    "Traffic around the secretariat was rerouted.",
]

PAIR_TEMPLATES = [
    "{a} told {b} the committee would reconvene.",
    "{a} said {b} had reviewed the figures.",
    "{a} asked {b} about the audit.",
    "{a} added that {b} supported the motion.",
    "{a} declared that {b} would continue.",
    "{a} alleged that {b} ignored the warnings.",
    "{a} spoke with {b} before the session.",
]


def tri_sentence(names):
    return f"{names[0]} said {names[1]} and {names[2]} should stand together on the findings."


def clique_sentence():
    return ("Farida Karim said Nusrat Jahan, Rafiq Mollah, Salma Akter, "
            "Tanvir Hossain and Zahid Noor had agreed on a joint response.")


QUOTE_ONLY = ('"Sohel Rana and Tania Ahmed must answer to the council," '
              "read the placard outside.")

# (article_id, source, date, kind, payload)
#   kind: tri=planted triangle, clique=planted 6-clique, pair=verb pair,
#         quote=quote-only pair, none=no statement sentence
PLAN = [
    ("art-001", "MC", "2021-01-04", "tri", 1),
    ("art-002", "DH", "2021-01-07", "pair", ("Abir Das", "Dilara Begum")),
    ("art-003", "MC", "2021-01-12", "pair", ("Arman Chowdhury", "Sohel Rana")),
    ("art-004", "DH", "2021-01-18", "none", None),
    ("art-005", "MC", "2021-01-25", "pair", ("Gita Rani", "Tania Ahmed")),
    ("art-006", "DH", "2021-02-03", "tri", 2),
    ("art-007", "MC", "2021-02-08", "pair", ("Bashir Uddin", "Enamul Haque")),
    ("art-008", "DH", "2021-02-14", "none", None),
    ("art-009", "MC", "2021-02-19", "pair", ("Arman Chowdhury", "Tania Ahmed")),
    ("art-010", "DH", "2021-02-24", "pair", ("Habib Mia", "Sohel Rana")),
    ("art-011", "MC", "2021-03-02", "tri", 3),
    ("art-012", "DH", "2021-03-07", "pair", ("Chandan Roy", "Farhan Kabir")),
    ("art-013", "MC", "2021-03-13", "none", None),
    ("art-014", "DH", "2021-03-19", "pair", ("Arman Chowdhury", "Abir Das")),
    ("art-015", "MC", "2021-03-26", "pair", ("Iqbal Syed", "Jamila Khatun")),
    ("art-016", "MC", "2021-04-05", "tri", 4),
    ("art-017", "DH", "2021-04-10", "clique", None),
    ("art-018", "MC", "2021-04-15", "pair", ("Kamrul Islam", "Monir Sheikh")),
    ("art-019", "DH", "2021-04-21", "none", None),
    ("art-020", "MC", "2021-04-27", "pair", ("Arman Chowdhury", "Dilara Begum")),
    ("art-021", "DH", "2021-05-03", "pair", ("Farida Karim", "Nusrat Jahan")),
    ("art-022", "MC", "2021-05-09", "pair", ("Laila Arju", "Nasrin Sultana")),
    ("art-023", "DH", "2021-05-14", "pair", ("Farida Karim", "Sohel Rana")),
    ("art-024", "MC", "2021-05-20", "none", None),
    ("art-025", "DH", "2021-05-26", "pair", ("Abir Das", "Dilara Begum")),
    ("art-026", "MC", "2021-06-02", "pair", ("Rafiq Mollah", "Salma Akter")),
    ("art-027", "DH", "2021-06-08", "pair", ("Omar Faruk", "Parvin Akhtar")),
    ("art-028", "MC", "2021-06-15", "pair", ("Arman Chowdhury", "Gita Rani")),
    ("art-029", "DH", "2021-06-22", "none", None),
    ("art-030", "MC", "2021-06-28", "pair", ("Qadir Bepari", "Nasrin Sultana")),
    ("art-031", "DH", "2021-07-05", "tri", 7),
    ("art-032", "MC", "2021-07-10", "pair", ("Tanvir Hossain", "Zahid Noor")),
    ("art-033", "DH", "2021-07-16", "pair", ("Monir Sheikh", "Qadir Bepari")),
    ("art-034", "MC", "2021-07-22", "none", None),
    ("art-035", "DH", "2021-07-28", "pair", ("Bashir Uddin", "Gita Rani")),
    ("art-036", "MC", "2021-08-04", "quote", ("Sohel Rana", "Tania Ahmed")),
    ("art-037", "DH", "2021-08-09", "pair", ("Nusrat Jahan", "Rafiq Mollah")),
    ("art-038", "MC", "2021-08-16", "pair", ("Enamul Haque", "Habib Mia")),
    ("art-039", "DH", "2021-08-23", "none", None),
    ("art-040", "MC", "2021-08-29", "pair", ("Arman Chowdhury", "Sohel Rana")),
    ("art-041", "DH", "2021-09-06", "tri", 9),
    ("art-042", "MC", "2021-09-11", "pair", ("Nasrin Sultana", "Rina Saha")),
    ("art-043", "DH", "2021-09-17", "pair", ("Salma Akter", "Tanvir Hossain")),
    ("art-044", "MC", "2021-09-23", "none", None),
    ("art-045", "DH", "2021-09-29", "pair", ("Chandan Roy", "Iqbal Syed")),
    ("art-046", "MC", "2021-10-05", "pair", ("Farida Karim", "Zahid Noor")),
    ("art-047", "DH", "2021-10-11", "pair", ("Dilara Begum", "Jamila Khatun")),
    ("art-048", "MC", "2021-10-17", "pair", ("Farhan Kabir", "Kamrul Islam")),
    ("art-049", "DH", "2021-10-24", "none", None),
    ("art-050", "MC", "2021-10-30", "pair", ("Arman Chowdhury", "Tania Ahmed")),
    ("art-051", "DH", "2021-11-04", "pair", ("Zahid Noor", "Tania Ahmed")),
    ("art-052", "MC", "2021-11-10", "pair", ("Nusrat Jahan", "Salma Akter")),
    ("art-053", "DH", "2021-11-16", "pair", ("Gita Rani", "Laila Arju")),
    ("art-054", "MC", "2021-11-22", "none", None),
    ("art-055", "DH", "2021-11-28", "pair", ("Habib Mia", "Omar Faruk")),
    ("art-056", "MC", "2021-12-06", "pair", ("Rafiq Mollah", "Tanvir Hossain")),
    ("art-057", "DH", "2021-12-12", "pair", ("Iqbal Syed", "Nasrin Sultana")),
    ("art-058", "MC", "2021-12-15", "pair", ("Jamila Khatun", "Parvin Akhtar")),
    ("art-059", "MC", "2021-12-20", "none", None),
    ("art-060", "DH", "2021-12-28", "pair", ("Abir Das", "Monir Sheikh")),
]

SOURCES = {"MC": "Morning Chronicle", "DH": "Daily Harbor"}

# Entity-bearing or trigger-bearing sentences that must NOT select.
NEARLY = [
    "Abir Das attended the ceremony.",
    "Observers said the turnout was low.",
    "Sohel Rana kept the gallery waiting.",
    "Tania Ahmed left without further remarks.",
]


def body_for(i, kind, payload):
    lead = FILLER[i % len(FILLER)]
    tail = FILLER[(i + 3) % len(FILLER)]
    if kind == "tri":
        mid = tri_sentence(TRIANGLES[payload])
    elif kind == "clique":
        mid = clique_sentence()
    elif kind == "pair":
        a, b = payload
        mid = PAIR_TEMPLATES[i % len(PAIR_TEMPLATES)].format(a=a, b=b)
    elif kind == "quote":
        mid = QUOTE_ONLY
    else:
        mid = NEARLY[i % len(NEARLY)]
    return f"{lead} {mid} {tail}"


def statement_pairs(kind, payload):
    if kind == "tri":
        return list(itertools.combinations(sorted(TRIANGLES[payload]), 2))
    if kind == "clique":
        return list(itertools.combinations(sorted(ELITE), 2))
    if kind in ("pair", "quote"):
        return [tuple(sorted(payload))]
    return []


def core_numbers(adj):
    degree = {v: len(ns) for v, ns in adj.items()}
    core = dict(degree)
    alive = set(adj)
    k = 0
    while alive:
        k += 1
        while True:
            drop = [v for v in alive if degree[v] < k]
            if not drop:
                break
            for v in drop:
                core[v] = k - 1
                alive.discard(v)
                for n in adj[v]:
                    if n in alive:
                        degree[n] -= 1
        for v in alive:
            core[v] = k
    return core


def check_planted():
    adj = {}
    upto_april = {}
    for _, _, date, kind, payload in PLAN:
        for a, b in statement_pairs(kind, payload):
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
            if date <= "2021-04-30":
                upto_april.setdefault(a, set()).add(b)
                upto_april.setdefault(b, set()).add(a)
        if date <= "2021-03-31":
            assert kind not in ("clique",), "elite structure before April"
            for a, b in statement_pairs(kind, payload):
                assert a not in ELITE and b not in ELITE, "elite mention before April"

    for graph, label in ((adj, "full"), (upto_april, "through April")):
        core = core_numbers(graph)
        top = {v for v, c in core.items() if c == max(core.values())}
        assert top == set(ELITE), f"{label}: top core {sorted(top)}"
        assert max(core.values()) == 5, f"{label}: max core {max(core.values())}"
        background_max = max(c for v, c in core.items() if v not in ELITE)
        assert background_max <= 3, f"{label}: background core {background_max}"
    return adj


def main():
    adj = check_planted()

    OUT.mkdir(parents=True, exist_ok=True)
    lines = []
    statements = 0
    events = 0
    for i, (article_id, src, date, kind, payload) in enumerate(PLAN):
        pairs = statement_pairs(kind, payload)
        statements += 1 if pairs else 0
        events += len(pairs)
        lines.append(json.dumps({
            "article_id": article_id,
            "source": SOURCES[src],
            "published": date,
            "headline": f"Briefing {article_id[4:]}",
            "body": body_for(i, kind, payload),
        }, ensure_ascii=False, sort_keys=True))
    (OUT / "corpus.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")

    names = sorted(ELITE + [n for t in TRIANGLES.values() for n in t] +
                   ["Sohel Rana", "Tania Ahmed", "Arman", "Chowdhury"])
    (OUT / "gazetteer.txt").write_text("\n".join(names) + "\n", encoding="utf-8")
    (OUT / "merge_rules.tsv").write_text("Arman\tChowdhury\n", encoding="utf-8")
    (OUT / "config.json").write_text(json.dumps({
        "corpus": "corpus.jsonl",
        "gazetteer": "gazetteer.txt",
        "merge_rules": "merge_rules.tsv",
        "output_dir": "out",
    }, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    simple_edges = sum(len(ns) for ns in adj.values()) // 2
    print(f"articles={len(PLAN)} statements={statements} events={events} "
          f"nodes={len(adj)} simple_edges={simple_edges}")


if __name__ == "__main__":
    main()
