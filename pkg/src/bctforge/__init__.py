"""Differential and boomerang analysis of power maps over GF(q^2)."""

from .analytic_counts import (AnalyticPreimage, bc_relation_holds, case2_b, case2_root_pairs,
                              delta1_analytic, delta2_analytic, solve_quadratic)
from .boomerang import (BctReport, bct_row_naive, bct_rows_fast, bct_table_naive,
                        boomerang_uniformity, solution_pairs)
from .field_core import FieldCtx, FieldSpec, build_field
from .power_map import (PowerMap, SpectrumReport, ddt_entry, delta_preimage, derivative_at,
                        differential_spectrum, evaluate, make_f1, make_f2, make_power)
from .verify import (VerificationReport, scan, verify_lemma1, verify_lemma2,
                     verify_theorem1, verify_theorem2)

__version__ = "0.1.0"
