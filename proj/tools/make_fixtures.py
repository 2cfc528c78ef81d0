#!/usr/bin/env python3
# Copyright 2026 The FtF Toolkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled fixtures under data/.

Everything is synthetic and seeded; rerunning produces identical bytes.

  data/sample/      400 arguments (100 per type, 50 dev + 50 train),
                    two annotators, plus a single-label gold file
  data/mock_run/    100 dev items with a canned model-output table
  data/errors/      40 wrong (pred, gold) pairs split 13/13/7/7, and the
                    five worked error cases with their expected category
  data/pilot/       service data dir: 100 arguments and a journal of 200
                    submissions, with a manifest of expected coverage
"""

import argparse
import json
import random
import re
from pathlib import Path

TYPES = ["false_dilemma", "faulty_generalization", "false_causality",
         "fallacy_of_credibility"]
ROLE_ORDER = ["A", "C", "A'", "C'", "X"]
LEGAL = {
    "false_dilemma": ["A", "C"],
    "faulty_generalization": ["A", "C", "A'", "C'"],
    "false_causality": ["A", "C"],
    "fallacy_of_credibility": ["A", "C", "X"],
}

# ---------------------------------------------------------------------------
# Sentence frames. Each frame fills its placeholders from the vocabulary and
# records which placeholder feeds which role.

ACTIONS_GOOD = [  # (action A, good consequence C)
    ("invest in public transit", "clean air"),
    ("fund the library", "literacy"),
    ("plant more trees", "shade in summer"),
    ("hire more teachers", "smaller classes"),
    ("build bike lanes", "safer streets"),
    ("expand the park", "community spirit"),
    ("subsidize solar panels", "cheap energy"),
    ("raise nurse salaries", "good hospital care"),
    ("teach coding in school", "future jobs"),
    ("open the border", "economic growth"),
    ("cut income taxes", "small businesses"),
    ("ban plastic bags", "clean oceans"),
    ("renovate the stadium", "tourism"),
    ("adopt the four day week", "worker happiness"),
]
ACTIONS_BAD = [  # (thing A, bad consequence C)
    ("hairspray", "the end of the world"),
    ("junk food", "heart disease"),
    ("video games", "violent children"),
    ("social media", "teen depression"),
    ("fireworks", "house fires"),
    ("energy drinks", "heart attacks"),
    ("online dating", "broken families"),
    ("cryptocurrency", "financial ruin"),
    ("rap music", "crime"),
    ("tattoos", "unemployment"),
    ("late night snacks", "obesity"),
    ("smart phones", "lonely kids"),
    ("nuclear power", "radioactive cities"),
    ("fast fashion", "landfills everywhere"),
]

FD_FRAMES = {
    1: ["Either we {A} or we can say goodbye to {C}.",
        "We {A} now, or {C} is gone forever."],
    2: ["If we do not {A}, {C} will destroy us.",
        "We either {A} or face {C}."],
    3: ["If we {A}, {C} is finished; there is no other outcome.",
        "Either we refuse to {A} or we lose {C} for good."],
    4: ["Either you give up {A} or you end up with {C}.",
        "You either quit {A} today or accept {C}."],
}
FD_BAD_ACTIONS = [  # A that suppress a bad C
    ("raise the minimum wage", "mass poverty"),
    ("close the factory", "toxic rivers"),
    ("vaccinate every child", "a deadly epidemic"),
    ("build the sea wall", "flooded homes"),
    ("ban handguns", "daily shootings"),
    ("hire more police", "chaos in the streets"),
    ("fix the bridge", "a fatal collapse"),
    ("tax sugar", "a diabetes crisis"),
]
FD_CATCHALL = [
    "You are either with us or against us.",
    "America: love it or hate it, nothing in between.",
    "Either the sky is blue or it is not.",
    "Some days are sunny and some days are rainy.",
    "This is either the best pizza in town or the worst.",
    "You either like jazz or you have never heard it.",
]

FG_FRAMES = {  # template: [(frame, frame mentions C' separately)]
    1: [("After {A'} gave my cousin {C'}, I am sure {A} brings {C} to everyone.", True),
        ("{A'} brought my sister {C}, so {A} will do the same for all of us.", False)],
    2: [("{A'} gave my uncle {C}, so {A} is a danger to everybody.", False),
        ("My neighbour got {C} from {A'}; clearly {A} should be banned.", False)],
    3: [("Because {A'} ruined {C'} for a coworker, {A} ruins {C} for anyone.", True),
        ("{A'} took away {C} from my roommate, so nobody should touch {A}.", False)],
    4: [("Since {A'} stopped {C} in one town, {A} will stop {C} everywhere.", False),
        ("{A'} kept {C} away from my aunt, so everyone needs {A}.", False)],
}
FG_ITEMS = [  # (sample A', general A, consequence)
    ("one yoga class", "yoga", "inner peace"),
    ("a single electric scooter", "electric scooters", "a broken wrist"),
    ("one cold shower", "cold showers", "a stronger immune system"),
    ("one bad landlord", "landlords", "stress"),
    ("a single coffee", "coffee", "insomnia"),
    ("one rude tourist", "tourists", "noise"),
    ("one diet book", "diet books", "weight loss"),
    ("one online course", "online courses", "a new career"),
    ("one used car", "used cars", "endless repairs"),
    ("one night shift", "night shifts", "exhaustion"),
    ("a single vegan meal", "vegan food", "more energy"),
    ("one loud neighbour", "neighbours", "sleepless nights"),
]
FG_CATCHALL = [
    "Most people I know prefer summer, so summer is the best season.",
    "My grandmother lived to ninety and she never exercised.",
    "Everyone in my class likes pizza.",
    "The last three winters were cold.",
    "All my friends own a dog.",
]

FC_FRAMES = {
    1: "Ever since I started {A}, I have had {C}.",
    2: "I lost {C} the same week I began {A}.",
    3: "I got {C} right after I started {A}.",
    4: "I have never had {C} because I take {A} every day.",
}
FC_ITEMS = {
    1: [("drinking green tea", "headaches"), ("jogging", "back pain"),
        ("using this shampoo", "bad luck"), ("wearing contacts", "nightmares")],
    2: [("reading comics", "my appetite"), ("playing chess", "my friends"),
        ("learning guitar", "my free time"), ("watching the news", "my optimism")],
    3: [("wearing blue socks", "a promotion"), ("eating carrots", "perfect grades"),
        ("carrying a crystal", "a new job"), ("drinking kombucha", "clear skin")],
    4: [("vitamins", "the flu"), ("garlic pills", "a cold"),
        ("fish oil", "migraines"), ("ginger tea", "hay fever")],
}
FC_CATCHALL = [
    "The stock market rose on Tuesday and it also rained on Tuesday.",
    "I have visited Paris twice.",
    "My cat sleeps most of the day.",
    "The bus was late again this morning.",
    "Ice cream sales are high in July.",
]

CR_SOURCES = ["A famous chef", "My dentist", "A Nobel laureate", "The mayor",
              "A popular influencer", "Our coach", "A retired general",
              "The school principal", "A well known actor", "My favourite author"]
CR_FRAMES = {
    1: "{X} says that {A} boosts {C}, so we should all try it.",
    2: "{X} claims {A} prevents {C}, so it must work.",
    3: "According to {X}, {A} destroys {C}, so we should avoid it.",
    4: "{X} warned that {A} causes {C}, so it must be dangerous.",
}
CR_ITEMS = {
    1: [("oat bran", "energy"), ("meditation", "focus"), ("cold brew", "creativity"),
        ("morning walks", "memory")],
    2: [("this bracelet", "arthritis"), ("garlic", "vampires"), ("magnets", "insomnia"),
        ("this spray", "sunburn")],
    3: [("homework", "childhood"), ("television", "imagination"),
        ("texting", "grammar"), ("calculators", "math skills")],
    4: [("microwaves", "cancer"), ("wifi", "migraines"), ("chewing gum", "ulcers"),
        ("daylight saving", "accidents")],
}
CR_CATCHALL = [
    "Albert Einstein was extremely impressed with this theory.",
    "My professor loved this movie.",
    "The president visited our town last year.",
    "A famous singer wore this jacket.",
    "The queen once stayed at this hotel.",
]

# ---------------------------------------------------------------------------


def tokenize(text):
    toks = []
    for raw in text.lower().split():
        t = raw.strip("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~")
        if t:
            toks.append(t)
    return toks


def is_span(text, value):
    hay, needle = tokenize(text), tokenize(value)
    if not needle:
        return False
    return any(hay[i:i + len(needle)] == needle for i in range(len(hay) - len(needle) + 1))


def check(text, inst):
    for role, value in inst["slots"].items():
        assert is_span(text, value), (text, role, value)


def fill(frame, values):
    out = frame
    for key, value in values.items():
        out = out.replace("{" + key + "}", value)
    assert "{" not in out, out
    return out[0].upper() + out[1:]


def gen_type(ftype, rng):
    """Yields (text, template_number, slots) candidates for one type."""
    out = []
    if ftype == "false_dilemma":
        for n, frames in FD_FRAMES.items():
            pool = {1: ACTIONS_GOOD, 2: FD_BAD_ACTIONS, 3: ACTIONS_GOOD,
                    4: ACTIONS_BAD}[n]
            for frame in frames:
                for a, c in pool:
                    out.append((fill(frame, {"A": a, "C": c}), n, {"A": a, "C": c}))
        for text in FD_CATCHALL:
            out.append((text, 5, {}))
    elif ftype == "faulty_generalization":
        for n, frames in FG_FRAMES.items():
            for frame, with_cprime in frames:
                for sample, general, cons in FG_ITEMS:
                    slots = {"A": general, "C": cons, "A'": sample}
                    vals = {"A": general, "C": cons, "A'": sample, "C'": cons}
                    if with_cprime:
                        slots["C'"] = cons
                    out.append((fill(frame, vals), n, slots))
        for text in FG_CATCHALL:
            out.append((text, 5, {}))
    elif ftype == "false_causality":
        for n, frame in FC_FRAMES.items():
            for a, c in FC_ITEMS[n]:
                for prefix in ["", "Honestly, ", "Trust me: ", "Funny thing. ",
                               "No joke, ", "Believe it or not, ", "I swear, ",
                               "True story: "]:
                    text = prefix + fill(frame, {"A": a, "C": c})
                    out.append((text[0].upper() + text[1:], n, {"A": a, "C": c}))
        for text in FC_CATCHALL:
            out.append((text, 5, {}))
    else:
        for n, frame in CR_FRAMES.items():
            for a, c in CR_ITEMS[n]:
                for x in CR_SOURCES:
                    if not frame.startswith("{X}"):
                        x = x[0].lower() + x[1:]
                    out.append((fill(frame, {"X": x, "A": a, "C": c}), n,
                                {"A": a, "C": c, "X": x}))
        for text in CR_CATCHALL:
            out.append((text, 5, {}))
    # Drop duplicate texts, keep first.
    seen, uniq = set(), []
    for item in out:
        if item[0] not in seen:
            seen.add(item[0])
            uniq.append(item)
    return uniq


def pick(ftype, rng, count=100, catch_all=(12, 18)):
    """`count` distinct arguments with a catch-all share in `catch_all`."""
    cands = gen_type(ftype, rng)
    fives = [c for c in cands if c[1] == 5]
    rest = [c for c in cands if c[1] != 5]
    n5 = rng.randint(*catch_all)
    # Catch-all texts are few; pad with reworded variants.
    openers = ["Well, ", "Honestly, ", "You know, ", "Anyway, "]
    variants = []
    i = 0
    while len(fives) + len(variants) < n5:
        base = fives[i % len(fives)][0]
        opener = openers[i // len(fives)]
        variants.append((opener + base[0].lower() + base[1:], 5, {}))
        i += 1
    fives = fives + variants
    rng.shuffle(rest)
    by_num = {}
    for c in rest:
        by_num.setdefault(c[1], []).append(c)
    chosen = []
    k = 0
    while len(chosen) < count - n5:
        assert any(by_num.values()), f"not enough {ftype} candidates"
        group = by_num[1 + k % 4]
        if group:
            chosen.append(group.pop())
        k += 1
    chosen += fives[:n5]
    rng.shuffle(chosen)
    return chosen


def inst(ftype, number, slots):
    ordered = {r: slots[r] for r in ROLE_ORDER if r in slots}
    return {"fallacy_type": ftype, "template_number": number, "slots": ordered}


def annotation(arg_id, annotator, instantiation, confidence=None, comment=None):
    return {"argument_id": arg_id, "annotator_id": annotator,
            "instantiation": instantiation, "confidence": confidence,
            "comment": comment}


def second_opinion(ftype, number, slots, rng):
    """Annotator 2: agrees most of the time, otherwise a plausible alternative."""
    roll = rng.random()
    if roll < 0.80:
        return number, dict(slots)
    if number != 5 and roll < 0.90:
        return 5, {}
    if number != 5:
        flipped = {1: 4, 2: 3, 3: 2, 4: 1}[number]
        return flipped, dict(slots)
    return number, {}


def write_jsonl(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, separators=(",", ":")) + "\n")


def write_json(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(obj, f, indent=2, ensure_ascii=False)
        f.write("\n")


def raw_output(ftype, number, slots):
    lines = [f"Template No.={number}"]
    for role in LEGAL[ftype]:
        lines.append(f"[{role}]={slots.get(role, '')}")
    return "\n".join(lines)


def coverage(records):
    """Per-type fraction of non-catch-all labels; macro and pooled."""
    per_type = {}
    for t in TYPES:
        rs = [r for r in records if r["instantiation"]["fallacy_type"] == t]
        if rs:
            per_type[t] = sum(r["instantiation"]["template_number"] != 5 for r in rs) / len(rs)
    macro = sum(per_type.values()) / len(per_type)
    pooled = sum(r["instantiation"]["template_number"] != 5 for r in records) / len(records)
    return {"per_type": per_type, "overall": macro, "pooled": pooled, "n": len(records)}


# ---------------------------------------------------------------------------


def build_sample(rng):
    arguments, a1, a2 = [], [], []
    for t_index, ftype in enumerate(TYPES):
        chosen = pick(ftype, rng)
        for i, (text, number, slots) in enumerate(chosen):
            arg_id = f"{['fd', 'fg', 'fc', 'cr'][t_index]}-{i + 1:03d}"
            split = "dev" if i < 50 else "train"
            arguments.append({"id": arg_id, "text": text, "fallacy_type": ftype,
                              "split": split, "source": "synthetic"})
            first = inst(ftype, number, slots)
            check(text, first)
            conf = None if rng.random() < 0.85 else round(rng.choice([0.5, 0.6, 0.7, 0.8]), 1)
            a1.append(annotation(arg_id, "a1", first, conf))
            n2, s2 = second_opinion(ftype, number, slots, rng)
            second = inst(ftype, n2, s2)
            check(text, second)
            a2.append(annotation(arg_id, "a2", second))
    return arguments, a1, a2


def build_mock_run(arguments, gold_by_id, rng):
    """25 dev items per type; TS / exact counts chosen per type."""
    plan = {  # type: (TS-correct, exact among them)
        "false_dilemma": (10, 2),
        "faulty_generalization": (5, 2),
        "false_causality": (25, 8),
        "fallacy_of_credibility": (7, 0),
    }
    queries, gold, table = [], [], []
    for ftype in TYPES:
        dev = [a for a in arguments if a["fallacy_type"] == ftype and a["split"] == "dev"]
        instantiable = [a for a in dev if gold_by_id[a["id"]]["template_number"] != 5]
        catch_all = [a for a in dev if gold_by_id[a["id"]]["template_number"] == 5]
        ts_ok, exact = plan[ftype]
        # Correct-template items must be instantiable, otherwise #5 vs #5
        # would be a free exact match.
        correct = instantiable[:ts_ok]
        wrong_pool = instantiable[ts_ok:] + catch_all
        wrong = wrong_pool[:25 - ts_ok]
        assert len(correct) == ts_ok and len(wrong) == 25 - ts_ok, ftype
        for k, a in enumerate(correct):
            g = gold_by_id[a["id"]]
            slots = dict(g["slots"])
            if k >= exact:
                # Near miss: extend A by a leading article.
                slots["A"] = "the " + slots["A"]
            table.append({"argument_id": a["id"],
                          "raw_output": raw_output(ftype, g["template_number"], slots)})
        for a in wrong:
            g = gold_by_id[a["id"]]
            if g["template_number"] == 5:
                words = tokenize(a["text"])
                slots = {r: words[i % len(words)] for i, r in enumerate(LEGAL[ftype])
                         if r != "C'"}
                table.append({"argument_id": a["id"],
                              "raw_output": raw_output(ftype, 1, slots)})
            else:
                other = {1: 2, 2: 1, 3: 4, 4: 3}[g["template_number"]]
                table.append({"argument_id": a["id"],
                              "raw_output": raw_output(ftype, other, g["slots"])})
        for a in correct + wrong:
            queries.append(a)
            gold.append(annotation(a["id"], "gold", gold_by_id[a["id"]]))
    table.sort(key=lambda r: r["argument_id"])
    return queries, gold, table


def build_errors(arguments, gold_by_id):
    """13 pred-5, 13 different-slot, 7 similar-slot, 7 instantiated-5 pairs."""
    dev = [a for a in arguments if a["split"] == "dev"]
    def interleave(items):
        by_type = [[a for a in items if a["fallacy_type"] == t] for t in TYPES]
        out = []
        for row in zip(*by_type):
            out.extend(row)
        return out

    inst_items = interleave([a for a in dev if gold_by_id[a["id"]]["template_number"] != 5])
    five_items = interleave([a for a in dev if gold_by_id[a["id"]]["template_number"] == 5])
    gold, preds, expected = [], [], []

    def pred(arg_id, ftype, number, slots):
        i = inst(ftype, number, slots)
        return {"argument_id": arg_id, "model_id": "mock-mistral",
                "prompt_style": "NL2", "shots": 0,
                "raw_output": raw_output(ftype, number, slots),
                "parsed": i, "parse_ok": True}

    it = iter(inst_items)
    for category, count in [("PRED5_GOLD_INSTANTIABLE", 13),
                            ("DIFF_TEMPLATE_DIFF_SLOTS", 13),
                            ("DIFF_TEMPLATE_SIMILAR_SLOTS", 7)]:
        for _ in range(count):
            a = next(it)
            g = gold_by_id[a["id"]]
            ftype, n, s = g["fallacy_type"], g["template_number"], g["slots"]
            other = {1: 2, 2: 1, 3: 4, 4: 3}[n]
            if category == "PRED5_GOLD_INSTANTIABLE":
                p = pred(a["id"], ftype, 5, {})
            elif category == "DIFF_TEMPLATE_DIFF_SLOTS":
                swapped = dict(s)
                swapped["A"], swapped["C"] = s["C"], s["A"]
                p = pred(a["id"], ftype, other, swapped)
            else:
                p = pred(a["id"], ftype, other, s)
            gold.append(annotation(a["id"], "gold", g))
            preds.append(p)
            expected.append({"argument_id": a["id"], "category": category})
    for a in five_items[:7]:
        g = gold_by_id[a["id"]]
        ftype = g["fallacy_type"]
        words = tokenize(a["text"])
        slots = {r: words[i % len(words)] for i, r in enumerate(LEGAL[ftype]) if r != "C'"}
        gold.append(annotation(a["id"], "gold", g))
        preds.append(pred(a["id"], ftype, 2, slots))
        expected.append({"argument_id": a["id"], "category": "INSTANTIATED_GOLD5"})
    return gold, preds, expected


WORKED = [
    {
        "argument_id": "w1", "fallacy_type": "false_dilemma",
        "text": "“America: Love it or leave it. This is an example of which kind "
                "of logical fallacy?”",
        "gold": (2, {"A": "Love it", "C": "leave it"}),
        "pred": "Template No.=5\n[A]=\n[C]=",
        "category": "PRED5_GOLD_INSTANTIABLE",
    },
    {
        "argument_id": "w2", "fallacy_type": "false_dilemma",
        "text": "We either ban hairspray or the world will end.",
        "gold": (4, {"A": "hairspray", "C": "the world will end"}),
        "pred": "Template No.=2\n[A]=ban hairspray\n[C]=the world will end",
        "category": "DIFF_TEMPLATE_DIFF_SLOTS",
        "note": "boundary case: A overlap is 1.0 by gold recall, 0.5 by Jaccard",
    },
    {
        "argument_id": "w3", "fallacy_type": "false_causality",
        "text": "I’ve never had the flu because I take my vitamins everyday.",
        "gold": (4, {"A": "vitamins", "C": "flu"}),
        "pred": "Template No.=[3]\n[A]= vitamins \n[C]=flu",
        "category": "DIFF_TEMPLATE_SIMILAR_SLOTS",
    },
    {
        "argument_id": "w4", "fallacy_type": "faulty_generalization",
        "text": "This new test seemed so promising, but the 3 studies that supported its "
                "validity turned out to have critical methodological flaws, so the test "
                "is probably not valid.",
        "gold": (2, {"A": "test", "C": "critical methodological flaws",
                     "A'": "3 studies that supported its validity turned out to have "
                           "critical methodological flaws"}),
        "pred": "Template No.=5\n[A]=\n[C]=\n[A']=\n[C']=",
        "category": "PRED5_GOLD_INSTANTIABLE",
    },
    {
        "argument_id": "w5", "fallacy_type": "fallacy_of_credibility",
        "text": "Albert Einstein was extremely impressed with this theory.",
        "gold": (5, {}),
        "pred": "Template No.=2\n[A]=this theory\n[C]=Albert Einstein\n"
                "[X]=extremely impressed",
        "category": "INSTANTIATED_GOLD5",
    },
]


def build_worked():
    rows = []
    for w in WORKED:
        g = inst(w["fallacy_type"], *w["gold"])
        check(w["text"], g)
        row = {"argument_id": w["argument_id"], "fallacy_type": w["fallacy_type"],
               "text": w["text"], "gold": g, "raw_output": w["pred"],
               "expected_category": w["category"]}
        if "note" in w:
            row["note"] = w["note"]
        rows.append(row)
    return rows


def build_pilot(arguments, a1, a2):
    """First 25 arguments of each type, both annotators, interleaved."""
    chosen = []
    for ftype in TYPES:
        chosen += [a for a in arguments if a["fallacy_type"] == ftype][:25]
    ids = {a["id"] for a in chosen}
    l1 = [r for r in a1 if r["argument_id"] in ids]
    l2 = [r for r in a2 if r["argument_id"] in ids]
    journal, seq = [], 0
    for r1, r2 in zip(l1, l2):
        for r in (r1, r2):
            seq += 1
            journal.append({"seq": seq, "event": "annotation_submitted",
                            "argument_id": r["argument_id"],
                            "annotator_id": r["annotator_id"], "annotation": r})
    records = l1 + l2
    manifest = {
        "arguments": len(chosen),
        "annotations": len(records),
        "annotators": ["a1", "a2"],
        "journal_length": len(journal),
        "coverage": {
            "all": coverage(records),
            "per_annotator": {"a1": coverage(l1), "a2": coverage(l2)},
        },
    }
    return chosen, journal, manifest


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path,
                        default=Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--seed", type=int, default=20240607)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    out = args.out

    arguments, a1, a2 = build_sample(rng)
    gold_by_id = {r["argument_id"]: r["instantiation"] for r in a1}
    write_jsonl(out / "sample" / "arguments.jsonl", arguments)
    write_jsonl(out / "sample" / "annotations.jsonl", a1 + a2)
    write_jsonl(out / "sample" / "gold.jsonl",
                [dict(r, annotator_id="gold", confidence=None) for r in a1])

    queries, gold, table = build_mock_run(arguments, gold_by_id, rng)
    write_jsonl(out / "mock_run" / "queries.jsonl", queries)
    write_jsonl(out / "mock_run" / "gold.jsonl", gold)
    write_jsonl(out / "mock_run" / "mock_table.jsonl", table)
    write_json(out / "mock_run" / "expected.json", {
        "model_id": "mock-mistral-7b", "style": "NL2", "shots": 0,
        "ts_accuracy": 0.47, "sf_exact": 0.23, "joint_exact": 0.1081,
        "per_type_ts_correct": {"false_dilemma": 10, "faulty_generalization": 5,
                                "false_causality": 25, "fallacy_of_credibility": 7},
        "per_type_exact": {"false_dilemma": 2, "faulty_generalization": 2,
                           "false_causality": 8, "fallacy_of_credibility": 0},
    })

    egold, epred, expected = build_errors(arguments, gold_by_id)
    write_jsonl(out / "errors" / "gold.jsonl", egold)
    write_jsonl(out / "errors" / "predictions.jsonl", epred)
    write_jsonl(out / "errors" / "expected.jsonl", expected)
    write_jsonl(out / "errors" / "worked_examples.jsonl", build_worked())

    pilot_args, journal, manifest = build_pilot(arguments, a1, a2)
    write_jsonl(out / "pilot" / "arguments.jsonl", pilot_args)
    write_jsonl(out / "pilot" / "journal.jsonl", journal)
    write_json(out / "pilot" / "manifest.json", manifest)


if __name__ == "__main__":
    main()
