"""Sweep the (n, k, r, delta) parameter space and tally the verdicts.

Every parameter point lands in exactly one of four buckets: optimal
codes exist (with a construction recipe), they exist because r = k
makes the problem plain MDS, they provably do not exist, or existence
is open. The bucket is decided by counting arguments alone; nothing
here touches a finite field.
"""

from collections import Counter

from lrcodes import (
    EXISTS,
    EXISTS_MDS,
    NOT_EXISTS,
    UNKNOWN,
    CodeParams,
    classify,
    distance_bound,
    field_bound,
)


def main() -> None:
    tally = Counter()
    examples = {}
    for n in range(4, 26):
        for k in range(2, n):
            for r in range(1, k + 1):
                for delta in range(2, n - k + 2):
                    try:
                        params = CodeParams(n, k, r, delta)
                    except ValueError:
                        continue
                    c = classify(params)
                    tally[c.verdict] += 1
                    examples.setdefault((c.verdict, c.method, c.tag), params)

    total = sum(tally.values())
    print(f"classified {total} parameter points with n <= 25")
    for verdict in (EXISTS, EXISTS_MDS, NOT_EXISTS, UNKNOWN):
        share = 100.0 * tally[verdict] / total
        print(f"  {verdict:>10}: {tally[verdict]:5d}  ({share:4.1f}%)")

    print()
    print("one example per decision rule:")
    for (verdict, method, tag), p in sorted(
            examples.items(), key=lambda kv: (kv[0][0], kv[0][2] or "")):
        label = method or tag or "mds"
        extra = ""
        if verdict == EXISTS:
            extra = (f", d = {distance_bound(p)}, "
                     f"any field with q >= {field_bound(p)} works")
        print(f"  [{verdict}] {label}: (n={p.n}, k={p.k}, r={p.r}, "
              f"delta={p.delta}){extra}")


if __name__ == "__main__":
    main()
