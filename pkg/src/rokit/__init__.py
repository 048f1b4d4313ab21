"""rokit: matrix-free Rosenbrock-Krylov time integration.

Linearly implicit one-step methods whose per-step linear algebra lives in
a small Krylov space of the Jacobian, built once per step by a modified
Arnoldi iteration.  Includes classical full-Jacobian Rosenbrock baselines,
order-condition and stability verification, adaptive step control, three
benchmark problems, and the ``odebench`` command-line harness.
"""

from .control import ControllerConfig, IntegrationStats, integrate_adaptive
from .errors import (DimensionMismatch, InsufficientRows, MissingCapability,
                     NonFiniteOutput, NotAutonomous, ReferenceDisagreement,
                     RokitError, SingularAtZ, SingularMatrix,
                     SingularReducedSystem, StepSizeUnderflow, UnknownMethod,
                     UnknownProblem, ZeroInitialVector)
from .krylov import (ArnoldiOptions, KrylovBasis, apply_reduced_power,
                     arnoldi, extend_basis_type2)
from .linalg import lu_factor, lu_solve, weighted_rms_norm
from .model import (JvpMode, OdeSystem, WorkCounters, ft, jvp,
                    second_directional_derivative)
from .problems import ProblemSpec, burgers_fd, get_problem, lorenz96, shallow_water
from .stepper import (RokConfig, StepResult, classical_rosenbrock_step,
                      integrate_fixed, make_classical_stepper,
                      make_rok_stepper, rok_step)
from .tableaux import (MethodTableau, classical_rodas4, classical_ros4,
                       get_method, rok4a, rok4b, rok4p, validate_tableau)
from .conditions import (ConditionResidual, linear_order,
                         order_condition_residuals,
                         parabolic_condition_residuals,
                         sample_stability_boundary, stability_at_infinity,
                         stability_function)

__version__ = "0.1.0"
