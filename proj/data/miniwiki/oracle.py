#!/usr/bin/env python3
"""Golden outputs for the mini-wiki, computed from the hand annotations.

Works from expected_edges.tsv plus the member lists and assessment counts
written out below; it does not parse wikitext. Writes expected/ and
expected/values.json (full-precision numbers for tolerance checks).
"""
import json
import math
import pathlib
import statistics

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "expected"

MEMBERS = {
    "Tropical cyclones": ["Alice", "Bob", "Carol", "Dave", "Erin", "Frank", "Grace"],
    "Birds": ["Grace", "Heidi", "Ivan", "Judy", "Mallory", "Alice"],
    "Chess": ["Niaj", "Bob", "Carol", "Mallory", "Ivan"],
}
# articles, FA, GA after dropping duplicates and non-article titles
ASSESSED = {"Tropical cyclones": (16, 3, 1), "Birds": (9, 1, 1), "Chess": (4, 0, 1)}
DELIVERY = {"MediaWiki message delivery"}
P = 0.5
MIN_ACTIVE = 5


def read_posts():
    posts = []
    for line in (HERE / "expected_edges.tsv").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        owner, poster, count = line.split("\t")
        posts.append((owner, poster, int(count)))
    return posts


def network(members, posts):
    w = {}
    for owner, poster, count in posts:
        if poster == owner or poster in DELIVERY:
            continue
        if owner not in members or poster not in members:
            continue
        key = tuple(sorted((owner, poster)))
        w[key] = w.get(key, 0) + count
    return w


def metrics(w):
    nodes = sorted({x for e in w for x in e})
    n = len(nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    mat = [[0.0] * n for _ in range(n)]
    for (a, b), c in w.items():
        mat[idx[a]][idx[b]] += c
        mat[idx[b]][idx[a]] += c
    rows = [[x / sum(r) for x in r] for r in mat]

    def h(dist):
        return -sum(p * math.log2(p) for p in dist if p > 0)

    det = math.log2(n) - sum(h(r) for r in rows) / n
    mean_row = [sum(rows[i][j] for i in range(n)) / n for j in range(n)]
    deg = math.log2(n) - h(mean_row)
    strength = sum(sum(r) for r in mat) / n
    lg = math.log2(n)
    return {"active": n, "det_bits": det, "deg_bits": deg, "ei_bits": det - deg,
            "det": det / lg, "deg": deg / lg, "ei": det / lg - deg / lg, "strength": strength}


def fx(v):
    s = f"{v:.9f}"
    return s[1:] if s == "-0.000000000" else s


def main():
    posts = read_posts()
    (OUT / "networks").mkdir(parents=True, exist_ok=True)
    (OUT / "metrics").mkdir(parents=True, exist_ok=True)
    (OUT / "parsed").mkdir(parents=True, exist_ok=True)
    (OUT / "quality").mkdir(parents=True, exist_ok=True)

    summary = ["project,member_count,active_nodes,fraction_in_network"]
    variables = ["project,member_count,active_nodes,fraction_in_network,average_strength,determinism_bits,"
                 "degeneracy_bits,effective_information_bits,determinism,degeneracy,effective_information,"
                 "n_articles,n_quality,n_fa,n_ga,quality,included"]
    members_csv = ["project,user"]
    quality = ["project,n_articles,n_quality,q_score"]
    grades = ["project,n_fa,n_ga"]
    values = {}
    rows = []
    for project in sorted(MEMBERS):
        members = sorted(MEMBERS[project])
        members_csv += [f"{project},{m}" for m in members]
        w = network(set(members), posts)
        active = sorted({x for e in w for x in e})
        lines = [f"{a}\t{b}\t{c}" for (a, b), c in sorted(w.items())]
        lines += [f"{m}\t0" for m in members if m not in active]
        slug = "".join(c if c.isalnum() or c in "-." else "_" for c in project)
        (OUT / "networks" / f"{slug}.tsv").write_text("\n".join(lines) + "\n")

        m = metrics(w)
        frac = len(active) / len(members)
        n_art, n_fa, n_ga = ASSESSED[project]
        nq = n_fa + n_ga
        q = nq / n_art ** P
        included = len(active) >= MIN_ACTIVE and nq >= 1
        summary.append(f"{project},{len(members)},{len(active)},{fx(frac)}")
        quality.append(f"{project},{n_art},{nq},{fx(q)}")
        grades.append(f"{project},{n_fa},{n_ga}")
        variables.append(",".join([project, str(len(members)), str(len(active)), fx(frac), fx(m["strength"]),
                                   fx(m["det_bits"]), fx(m["deg_bits"]), fx(m["ei_bits"]), fx(m["det"]),
                                   fx(m["deg"]), fx(m["ei"]), str(n_art), str(nq), str(n_fa), str(n_ga), fx(q),
                                   "1" if included else "0"]))
        values[project] = dict(m, fraction=frac, members=len(members), quality=q, n_fa=n_fa, n_ga=n_ga,
                               included=included)
        if included:
            rows.append(values[project])

    (OUT / "networks" / "summary.csv").write_text("\n".join(summary) + "\n")
    (OUT / "metrics" / "variables.csv").write_text("\n".join(variables) + "\n")
    (OUT / "parsed" / "members.csv").write_text("\n".join(members_csv) + "\n")
    (OUT / "quality" / "quality.csv").write_text("\n".join(quality) + "\n")
    (OUT / "quality" / "grade_counts.csv").write_text("\n".join(grades) + "\n")

    desc = {}
    for key, col in (("quality", "quality"), ("fraction", "fraction"), ("det_norm", "det"),
                     ("deg_norm", "deg"), ("strength", "strength"), ("members", "members")):
        xs = [r[col] for r in rows]
        desc[key] = {"mean": statistics.fmean(xs), "sd": statistics.stdev(xs) if len(xs) > 1 else None,
                     "median": statistics.median(xs)}
    values["_regression_rows"] = [p for p in sorted(MEMBERS) if values[p]["included"]]
    values["_descriptives"] = desc
    (OUT / "values.json").write_text(json.dumps(values, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
