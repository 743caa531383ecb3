"""Exact-arithmetic graded-module computations over the Virasoro-like algebra.

The package models the rank-two lattice algebra with two central charges,
weight functionals in exp-polynomial or recurrence form, loop modules over
the Heisenberg subalgebra, highest-weight quotient dimensions via an exact
radical pairing, lattice-graded tensor and sl2 loop modules, and a rational
certificate ruling out degree-one graded modules.  Everything is computed
over exact rationals; truncation parameters are explicit in every report.
"""

from .errors import (AmbiguousSignError, NoValidSignError, PreconditionError,
                     TruncationOverflowError)
from .functionals import (ExpPolyFunctional, ExpPolyTerm, FSequence,
                          LinearRecurrence, RecurrenceDetection,
                          char_recurrence, detect_recurrence, eval_psi_D,
                          eval_psi_h, f_sequence, f_value, flip, functional,
                          functional_from_json, functional_to_json)
from .heisenberg import (HeisenbergModule, is_irreducible_loop, loop_module,
                         psi_d_of, reachable_exponents, support_gcd)
from .hw import (DimensionEngine, DimensionReport, GramMatrix,
                 TruncationParams, annihilator_polynomial, gram_matrix,
                 lower_bound_witness, lowest_weight_mirror, quotient_level_dim,
                 upper_bound_from_annihilator, verma_level_span)
from .intermediate import (Certificate, StepCandidate, TraceSequence,
                           check_difference_identities, falsify, stencil_step,
                           trace_sequence)
from .lattice import (AlgebraElement, LatticeVector, ZBasis, bracket,
                      bracket_in_basis, d_gen, det2, element, h_of,
                      is_z_basis, render, vec, z_degree)
from .scalars import Scalar, parse_scalar, scalar_str
from .z2 import (LoopSl2Module, LoopVerdict, ReducibilityReport, Sl2Rep,
                 TensorElement, TruncatedTensorModule, act_loop_sl2,
                 act_tensor, loop_irreducibility_window, loop_sl2_module,
                 reachable_texp_set, resolve_sign, sl2_irrep,
                 symmetric_pair_independence, tensor_reducibility,
                 z2_dimension_table, z2_quotient_dim)

__version__ = "0.1.0"
