"""Characterize clusters with values-test profiles.

Builds the synthetic two-dialect corpus, cuts the Ward tree into two groups,
and prints each group's most characteristic forms the way a published
profile table would show them: v value, in-group and overall means and
standard deviations, and the two-sided p value. Also contrasts the default
"lebart" mode with the simpler "paper_footnote" standardization and shows
the explicit member-list override.

Run from the repository root:

    python demos/02_group_profiles.py
"""

from __future__ import annotations

from scriptometer import (
    build_dtm,
    cut_tree,
    distance_matrix,
    group_profile,
    relative_freq,
    select_mfw,
    synthetic,
    values_test,
    ward_cluster,
)


def print_profile_table(profile, top: int) -> None:
    header = f"{'form':>14} {'v.test':>9} {'mean cat.':>10} {'overall':>9} {'sd cat.':>9} {'sd':>9} {'p':>8}"
    print(header)
    print("-" * len(header))
    for row in profile.display_rows(top):
        print(
            f"{row.form:>14} {row.v_test:9.4f} {row.mean_in_cat:10.4f} "
            f"{row.overall_mean:9.4f} {row.sd_in_cat:9.4f} {row.overall_sd:9.4f} "
            f"{row.p_value:8.4f}"
        )


def main() -> None:
    witnesses, planted = synthetic.synthetic_witnesses()
    rel = relative_freq(select_mfw(build_dtm(witnesses), 100))
    dend = ward_cluster(distance_matrix(rel, "manhattan"))
    assign = cut_tree(dend, 2)

    for cluster in range(2):
        members = [wid for wid, lab in zip(assign.ids, assign.labels) if lab == cluster]
        print(f"\n=== profile of cluster {cluster} ({', '.join(members)}) ===")
        profile = group_profile(rel, assign, cluster, top=5)
        print_profile_table(profile, top=5)

    print("\n=== the two standardizations disagree ===")
    form = rel.forms.index(
        next(f for f in rel.forms if f.startswith("nord"))
    )
    lebart = values_test(rel, assign, cluster=0, form=form, mode="lebart")
    print(f"form {rel.forms[form]!r}: lebart v = {lebart.v_test:.4f}")
    try:
        footnote = values_test(rel, assign, cluster=0, form=form, mode="paper_footnote")
        print(f"form {rel.forms[form]!r}: footnote v = {footnote.v_test:.4f}")
    except ValueError as exc:
        print(f"footnote mode refuses this form: {exc}")

    print("\n=== explicit member override ===")
    override = list(planted.ids[:3])
    profile = group_profile(rel, None, cluster=0, top=3, members=override)
    print(f"profiling ad-hoc group {override}:")
    print_profile_table(profile, top=3)


if __name__ == "__main__":
    main()
