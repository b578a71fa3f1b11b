#!/usr/bin/env python3
"""Regenerates data/geico_reviews.csv, the bundled stand-in review corpus.

The original public corpus (1,371 one- and two-star vehicle insurance
reviews) is fetched from the web; this script produces a synthetic corpus
with the same schema, size, and rating profile so the pipeline and its
tests run offline. Replace data/geico_reviews.csv with the real CSV to
analyze the actual reviews.
"""

import csv
import random
import sys

N_REVIEWS = 1371

THEMES = [
    ["rental", "claim", "pay", "days", "deductible", "collision", "damage",
     "coverage", "cover", "car", "reimbursement"],
    ["claim", "file", "person", "run", "find", "fraud", "accident",
     "complaint", "investigator", "denied"],
    ["quote", "policy", "agent", "online", "rate", "change", "price",
     "called", "higher", "rep", "premium"],
    ["policy", "called", "payment", "paid", "bill", "asked", "cancelled",
     "received", "monthly", "payments", "autopay"],
    ["called", "claim", "adjuster", "received", "left", "number", "contact",
     "weeks", "agent", "voicemail"],
    ["company", "people", "business", "money", "owner", "insured",
     "practices", "action", "unfair", "lawsuit", "law"],
    ["customer", "service", "representative", "gave", "customers", "mistake",
     "continue", "loyal", "spoke", "poor"],
    ["shop", "repair", "body", "adjuster", "parts", "damage", "estimate",
     "damaged", "replaced", "refused", "mechanic"],
    ["police", "fault", "report", "accident", "light", "red", "turn",
     "stopped", "stated", "damage", "intersection"],
    ["customer", "service", "company", "experience", "worst", "horrible",
     "terrible", "rude", "cheap", "treated"],
    ["total", "loss", "dollars", "worth", "totaled", "adjuster", "price",
     "offered", "sell", "cash", "vehicle"],
    ["damage", "front", "bumper", "door", "accident", "side", "hit", "lot",
     "parking", "paint", "rear"],
    ["coverage", "full", "pay", "money", "bought", "customer", "liability",
     "save", "service", "options"],
    ["policy", "spoke", "explained", "needed", "representative", "clear",
     "issues", "information", "complete", "confusing"],
    ["check", "called", "back", "weeks", "send", "paperwork", "months",
     "fax", "wrong", "forward", "mailed"],
    ["information", "stated", "auto", "representative", "number", "provided",
     "party", "companies", "requested", "correct"],
    ["left", "attorney", "street", "office", "deal", "client", "completely",
     "lie", "wrong", "showed", "court"],
    ["information", "claim", "weeks", "called", "contacted", "case",
     "response", "woman", "handle", "uninsured"],
    ["back", "pay", "money", "day", "long", "wait", "hours", "making",
     "calls", "working", "refund"],
    ["asked", "called", "back", "supervisor", "wanted", "manager", "rude",
     "rep", "speak", "customer", "hung"],
    ["truck", "back", "fix", "drive", "collision", "problem", "month",
     "ago", "water", "flood", "engine"],
    ["accident", "medical", "pay", "pain", "bills", "totaled", "injuries",
     "hospital", "horrible", "injury"],
    ["account", "payment", "bank", "money", "card", "credit", "refund",
     "make", "debit", "checking", "charged"],
    ["covered", "roadside", "assistance", "tire", "service", "problem",
     "towing", "called", "tires", "gas", "stranded"],
    ["letter", "received", "state", "send", "coverage", "email", "mail",
     "dmv", "phone", "address", "notice"],
    ["paid", "money", "stolen", "thing", "job", "months", "paying",
     "totaled", "life", "hard", "struggling"],
    ["policy", "son", "daughter", "driver", "added", "family", "driving",
     "wife", "coverage", "husband", "teen"],
    ["claim", "accident", "adjuster", "client", "made", "fault", "case",
     "liability", "filed", "denied", "refuse"],
    ["years", "months", "record", "driving", "past", "switched", "insure",
     "great", "high", "clean", "loyalty"],
    ["rates", "premium", "company", "policy", "increase", "year", "cost",
     "times", "increased", "raised", "renewal"],
]

FILLERS = ["the", "a", "my", "i", "was", "they", "to", "and", "of", "it",
           "for", "that", "with", "on", "have", "had", "been", "this",
           "not", "me", "so", "we", "is", "at", "after", "when", "then",
           "their", "them", "would", "just", "very"]

# (display text, target number of reviews mentioning it)
COMPETITORS = [
    ("Progressive", 130),
    ("AllState", 110),
    ("State Farm", 95),
    ("Nationwide", 40),
    ("Farmers", 30),
    ("Esurance", 20),
    ("Liberty Mutual", 15),
    ("USAA", 10),
]


def sentence(rng, theme, extra_phrase=None):
    n = rng.randint(6, 13)
    words = []
    for _ in range(n):
        if rng.random() < 0.45:
            words.append(rng.choice(FILLERS))
        else:
            words.append(rng.choice(theme))
    if extra_phrase is not None:
        pos = rng.randint(0, len(words))
        words[pos:pos] = extra_phrase.split(" ")
    if len(words) > 8 and rng.random() < 0.4:
        words[rng.randint(3, len(words) - 3)] += ","
    text = " ".join(words)
    return text[0].upper() + text[1:] + "."


def main():
    rng = random.Random(20260823)
    mentions = []
    for name, count in COMPETITORS:
        mentions += [name] * count
    rng.shuffle(mentions)
    mention_slots = sorted(rng.sample(range(N_REVIEWS), len(mentions)))
    slot_to_mention = dict(zip(mention_slots, mentions))

    rows = []
    for i in range(N_REVIEWS):
        theme_main = rng.choice(THEMES)
        theme_alt = rng.choice(THEMES)
        n_sent = rng.randint(2, 5)
        sentences = []
        cs_slot = rng.randint(0, n_sent - 1) if rng.random() < 0.32 else -1
        comp_slot = rng.randint(0, n_sent - 1) if i in slot_to_mention else -1
        for s in range(n_sent):
            theme = theme_main if rng.random() < 0.75 else theme_alt
            extra = None
            if s == cs_slot:
                extra = "customer service"
            elif s == comp_slot:
                extra = slot_to_mention[i]
            sentences.append(sentence(rng, theme, extra))
        rows.append({
            "id": f"rv{i + 1:05d}",
            "rating": 1 if rng.random() < 0.6 else 2,
            "text": " ".join(sentences),
        })

    out = sys.argv[1] if len(sys.argv) > 1 else "data/geico_reviews.csv"
    with open(out, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=["id", "rating", "text"])
        w.writeheader()
        w.writerows(rows)
    print(f"wrote {len(rows)} reviews to {out}")


if __name__ == "__main__":
    main()
