#!/usr/bin/env python3
"""Extract the graph corpus from a LaTeX/TikZ document.

Each ``tikzpicture`` in the source that declares vertex coordinates via
``\\foreach \\i/\\x/\\y in {...}`` becomes one graph document.  Gray edges
come from the ``\\foreach \\i/\\j in {...}`` list, red (forbidden-distance)
edges from ``\\draw[red,...] (p-a) -- (p-b);`` statements.  The caption and
claimed lengths are read from the caption / trailing paragraph that follows
the picture.  Vertex labels in the source are 1-based; output indices are
0-based.

Usage:
    extract_corpus.py SOURCE.tex OUTDIR

The script is run once; its output (OUTDIR/*.json plus OUTDIR/index.json)
is committed and the toolkit never reads the TeX source at runtime.
"""

import json
import math
import re
import sys
from collections import defaultdict
from pathlib import Path

COORD_RE = re.compile(r"\\foreach\s*\\i/\\x/\\y\s*in\s*\{(.*?)\}", re.S)
EDGE_RE = re.compile(r"\\foreach\s*\\i/\\j\s*in\s*\{(.*?)\}", re.S)
RED_RE = re.compile(r"\\draw\[red[^\]]*\]\s*\(p-(\d+)\)\s*--\s*\(p-(\d+)\)")
CAPTION_RE = re.compile(r"\\(captionof\{figure\}|subcaption\*|caption)\{(.*)\}\s*$", re.M)
PAR_RE = re.compile(r"^\s*\{\\par\\centering(.*?)\\par\}", re.M)
PAIR_RE = re.compile(r"\\vert\s*P?(\d+)\s*,\s*P?(\d+)\s*\\vert")
APPROX_RE = re.compile(r"\\approx\s*([0-9]+\.[0-9]+)")


def parse_claims(text):
    """Return [(u, v, literal)] (1-based labels) for every |Pa,Pb| ~ value."""
    claims = []
    for chunk in re.findall(r"\$(.*?)\$", text, re.S):
        value = APPROX_RE.search(chunk)
        if not value:
            continue
        for a, b in PAIR_RE.findall(chunk):
            claims.append((int(a), int(b), value.group(1)))
    return claims


def symmetry_label(text):
    t = text.lower()
    m = re.search(r"rotational symmetry of order (\d+)", t)
    if m:
        return f"rotational({m.group(1)})"
    if "point symmetry" in t:
        return "point"
    if "mirror symmetry" in t:
        return "mirror"
    if "asymmetric" in t:
        return "asymmetric"
    return None


def edge(a, b):
    return [min(a, b), max(a, b)]


def extract(source):
    pictures = [m.start() for m in re.finditer(r"\\begin\{tikzpicture\}", source)]
    pictures.append(len(source))
    blocks = []
    for start, nxt in zip(pictures, pictures[1:]):
        body_end = source.index(r"\end{tikzpicture}", start)
        body = source[start:body_end]
        coords = COORD_RE.search(body)
        if not coords:
            continue
        labels = {}
        for item in coords.group(1).split(","):
            item = item.strip()
            if not item:
                continue
            i, x, y = item.split("/")
            labels[int(i)] = (x.strip(), y.strip())
        n = len(labels)
        order = sorted(labels)
        # Some pictures skip labels; vertices are renumbered densely.
        index_of = {lab: k for k, lab in enumerate(order)}
        edges = set()
        for item in EDGE_RE.search(body).group(1).split(","):
            item = item.strip()
            if item:
                a, b = (int(t) for t in item.split("/"))
                edges.add(tuple(edge(index_of[a], index_of[b])))
        red = []
        for a, b in RED_RE.findall(body):
            e = tuple(edge(index_of[int(a)], index_of[int(b)]))
            edges.add(e)
            if e not in red:
                red.append(e)
        tail = source[body_end:nxt]
        caps = CAPTION_RE.findall(tail)
        caption = caps[0][1].strip() if caps else ""
        claim_text = caption
        par = PAR_RE.search(tail)
        if par:
            claim_text += " " + par.group(1)
        outer_caption = None
        if caps and caps[0][0] == "subcaption*" and len(caps) > 1:
            outer_caption = caps[1][1].strip()
        blocks.append(dict(vertices=[labels[i] for i in order], labels=order,
                           index_of=index_of,
                           edges=sorted(edges), red=red, caption=caption,
                           outer_caption=outer_caption,
                           claims=parse_claims(claim_text),
                           offset=start))
    return blocks


def length(vertices, u, v):
    (x1, y1), (x2, y2) = vertices[u], vertices[v]
    return math.hypot(float(x1) - float(x2), float(y1) - float(y2))


def main():
    src = Path(sys.argv[1]).read_text()
    out = Path(sys.argv[2])
    out.mkdir(parents=True, exist_ok=True)
    section3 = src.index("that look like matchstick graphs")
    blocks = extract(src)

    # Fixed identifiers for the non-gallery graphs, in source order:
    # title figure, Harborth graph, Epsilon 27 (two states), Epsilon 42
    # (two states).
    special = ["title_51", "harborth_52", "eps_27_left", "eps_27_right",
               "eps_42", "eps_42_right"]
    special_sym = {"eps_27_left": "rotational(3)", "eps_27_right": "rotational(3)",
                   "eps_42": "point", "eps_42_right": "point"}
    descriptors = {"asymmetric": "asym", "point": "point", "mirror": "mirror"}

    gallery = [b for b in blocks if b["offset"] > section3]
    others = [b for b in blocks if b["offset"] < section3]
    assert len(others) == len(special)

    docs = []
    for name, b in zip(special, others):
        b["id"] = name
        b["symmetry"] = special_sym.get(name, symmetry_label(b["caption"]))
        if name == "harborth_52":
            b["symmetry"] = None
        docs.append(b)

    groups = defaultdict(list)
    for b in gallery:
        sym = symmetry_label(b["caption"])
        b["symmetry"] = sym
        if sym is None:
            desc = "unl"
        elif sym.startswith("rotational"):
            desc = "rot" + sym[len("rotational("):-1]
        else:
            desc = descriptors[sym]
        groups[(len(b["vertices"]), desc)].append(b)
    for (n, desc), members in groups.items():
        for k, b in enumerate(members):
            suffix = f"_{chr(ord('a') + k)}" if len(members) > 1 else ""
            b["id"] = f"fig_{n}v_{desc}{suffix}"
        docs.extend(members)

    # The title figure repeats a gallery figure; keep one copy.
    aliases = defaultdict(list)
    title = docs[0]
    for b in gallery:
        if b["vertices"] == title["vertices"] and b["edges"] == title["edges"]:
            aliases[b["id"]].append(title["id"])
            break
    else:
        raise SystemExit("title figure has no gallery twin")
    docs = docs[1:]

    index = []
    for b in docs:
        red_set = set(b["red"])
        claimed = []
        unmatched = []
        for a, c, lit in b["claims"]:
            e = tuple(edge(b["index_of"][a], b["index_of"][c]))
            (claimed if e in red_set else unmatched).append(
                {"edge": list(e), "length": lit})
        # A subcaption like "red edges ~0.845" applies to every red edge.
        if not b["claims"] and b["caption"].startswith("red edges"):
            m = re.search(r"\\approx\s*([0-9.]+)", b["caption"])
            if m:
                claimed = [{"edge": list(e), "length": m.group(1)} for e in sorted(red_set)]
        for c in unmatched:
            u, v = c["edge"]
            print(f"warning: {b['id']}: claim |P{b['labels'][u]},P{b['labels'][v]}| ~ {c['length']} "
                  f"is not a red edge (drawn length {length(b['vertices'], u, v):.10f}); dropped",
                  file=sys.stderr)
        caption = b["caption"]
        if b["outer_caption"]:
            caption = f"{b['outer_caption']}: {caption}"
        doc = {
            "id": b["id"],
            "caption": caption,
            "symmetry": b["symmetry"],
            "vertices": [list(p) for p in b["vertices"]],
            "edges": [list(e) for e in b["edges"]],
            "red_edges": [list(e) for e in sorted(red_set)],
            "claimed_deviations": sorted(claimed, key=lambda c: c["edge"]),
        }
        if b["labels"] != list(range(1, len(b["labels"]) + 1)):
            doc["labels"] = b["labels"]
        fname = f"{b['id']}.json"
        (out / fname).write_text(json.dumps(doc, indent=1) + "\n")
        index.append({"id": b["id"], "file": fname, "caption": caption,
                      "aliases": aliases.get(b["id"], []),
                      "gallery": b["offset"] > section3,
                      "label_base": 1,
                      "vertices": len(b["vertices"]),
                      "red_edges": len(red_set),
                      "symmetry": b["symmetry"]})
        print(f"{b['id']:22s} n={len(b['vertices']):3d} m={len(b['edges']):3d} "
              f"red={len(red_set)} claims={len(claimed)} sym={b['symmetry']}",
              file=sys.stderr)
    index.sort(key=lambda e: (e["vertices"], e["id"]))
    (out / "index.json").write_text(json.dumps({"label_base": 1, "entries": index}, indent=1) + "\n")


if __name__ == "__main__":
    main()
