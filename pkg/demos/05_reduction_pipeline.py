"""The commutative-witness reduction pipeline, end to end.

Starting from a matrix presentation over QQ(x), the pipeline splits off
the radical, adjoins the blocks' characteristic scalars, passes to the
center of the semisimple part, and reads off a commutative algebra of
block scalars indexed by the reduced words in radical and idempotent
letters.  The witness has the same growth degree as the input, which is
how the degree is certified to be an integer.
"""

from gkgrowth import (
    AlgebraPresentation,
    Matrix,
    PipelineConfig,
    RatFuncField,
    run_pipeline,
)

F = RatFuncField("x")

source = AlgebraPresentation(
    F,
    2,
    [Matrix.diagonal(F, [F.gen(), F.zero]), Matrix.elementary(F, 2, 0, 1)],
    "ut2-x",
)
report = run_pipeline(source, PipelineConfig(max_level=12, window=(4, 12)))

print("stages:")
for stage in report.stages:
    table = report.stage_tables[stage.stage_id]
    print(f"  {stage.stage_id:20s} generators={len(stage.presentation.generators):2d}  dims={table.dims}")
    for note in stage.notes:
        print(f"      note: {note}")

print("\nper-step dominance on window", report.config.window)
for name, equivalence in report.step_equivalences:
    print(
        f"  {name:45s} K = {equivalence.forward.k_min} / {equivalence.backward.k_min}"
        f"  [{equivalence.verdict}]"
    )

print("\nreduced words:", [w.name for w in report.words])
print("chosen word:", report.chosen_word.name if report.chosen_word else None)
print("witness generators:", [str(g.entry(0, 0)) for g in report.witness.generators])
print(
    "growth degrees: source", report.source_estimate.value,
    "witness", report.witness_estimate.value,
)
print("integer verdict:", report.integer_verdict)

print("\nhypothesis ledger:")
for name, status in report.hypothesis_ledger:
    print(f"  {name:55s} {status}")
