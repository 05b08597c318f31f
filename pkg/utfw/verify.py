"""
Property suites used by ``utfw verify``. Each suite runs a set of checks
against closed forms or independent quadratures and reports, for every
check, a margin that is nonnegative when the check passes.
"""

import logging
import numpy as np
import scipy.integrate
import scipy.optimize
from .util import Struct, ALPHA_PHYSICAL
from .utfw import Utfw
from .configurations import lambdas
from .radial_grid import RadialGrid, RadialDensity
from .geometry import MoleculeConfig
from .certificate import xi1_pointwise_min, ball_integral, exterior_bound, \
    largest_certified_charge, lieb_yau_gap
from .uncertainty import WeightFn, probe_grid, random_probe, extremal_f, schwarz_ratio, \
    mup_sides, sharpness_search, SHARP_COEFFICIENT
from .instability import TrialFamily, trial_density

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# The three values of lambda for which bounds are quoted
TABLE_LAMBDAS = [lambdas['kirzhnits'], lambdas['tomishima-yonei'], lambdas['lieb']]

def relative_error(value, expected):
    return abs(value - expected) / abs(expected)

class SuiteResult(Struct):
    """
    ``passed`` is True if every check passed; ``worst`` is the smallest
    margin over the checks.
    """
    pass

class Suite():
    """
    Collects the margins of the checks of one suite.
    """

    def __init__(self, name):
        self.name = name
        self.checks = []

    def tolerance(self, label, error, tol):
        """
        Record a check |error| <= tol. The margin is 1 - |error| / tol.
        """
        self.checks.append((label, 1 - abs(error) / tol))

    def margin(self, label, margin):
        """
        Record a check whose margin is already computed.
        """
        self.checks.append((label, float(margin)))

    def result(self):
        margins = np.array([m for _, m in self.checks])
        failed = [label for label, m in self.checks if not m >= 0]
        for label in failed:
            logger.warning('{}: check {!r} failed'.format(self.name, label))
        worst = int(np.argmin(margins))
        return SuiteResult(name=self.name,
                           passed=len(failed) == 0,
                           worst=float(margins[worst]),
                           worst_check=self.checks[worst][0],
                           checks=len(self.checks),
                           failed=failed)

def model_suite(alpha=ALPHA_PHYSICAL):
    suite = Suite('model_core')
    for lam in TABLE_LAMBDAS + [1.0]:
        model = Utfw(lam, alpha)
        suite.tolerance('a^2 lambda={}'.format(lam),
                        relative_error(model.a_squared, 3 / (8 * np.pi ** 2) * (3 * np.pi ** 2) ** (2 / 3) * lam), 1e-12)
        suite.tolerance('b^2 lambda={}'.format(lam),
                        relative_error(model.b_squared, 0.75 * (3 * np.pi ** 2) ** (1 / 3)), 1e-12)
        custom = Utfw.from_ab(model.a, model.b, alpha)
        suite.tolerance('from_ab lambda={}'.format(lam), relative_error(custom.lam, lam), 1e-12)
    return suite.result()

def quadrature_suite(alpha=ALPHA_PHYSICAL):
    suite = Suite('quadrature')
    model = Utfw(lambdas['tomishima-yonei'], alpha)
    for kind in RadialGrid.kinds:
        grid = RadialGrid(2000, 50.0, kind)
        suite.tolerance('int 1 dr ({})'.format(kind), relative_error(grid.integrate(np.ones(grid.n)), grid.r_max), 1e-10)
        rho = RadialDensity.from_function(lambda r: np.exp(-r), grid)
        suite.tolerance('exp(-r) charge ({})'.format(kind), relative_error(rho.total_charge(), 8 * np.pi), 1e-6)

    wide = RadialGrid(4000, 1e8, 'log', r_min=1e-6)
    power = trial_density(TrialFamily('power', 1.0, 1.0, 4), wide)
    suite.tolerance('power p=4 charge', relative_error(power.total_charge(), 4 * np.pi / 3), 1e-6)

    rho = RadialDensity.from_function(lambda r: np.exp(-r), RadialGrid(2000, 50.0))
    suite.tolerance('exp(-r) Hartree', relative_error(model.hartree_radial(rho), 10 * np.pi ** 2 * alpha), 1e-6)

    R = 2.0
    ball = RadialGrid(2000, R)
    Q = 3.0
    uniform = RadialDensity(ball, np.full(ball.n, Q / (4 / 3 * np.pi * R ** 3)))
    suite.tolerance('uniform ball Hartree', relative_error(model.hartree_radial(uniform), 0.6 * alpha * Q * Q / R), 1e-6)
    return suite.result()

def critical_charge_suite(alpha=ALPHA_PHYSICAL):
    suite = Suite('critical_charge')
    for lam in TABLE_LAMBDAS:
        model = Utfw(lam, alpha)
        bounds = model.atomic_bounds()
        suite.tolerance('lower lambda={}'.format(lam), relative_error(bounds.lower, np.sqrt(1.5 * lam) / alpha), 1e-9)
        suite.tolerance('gap lambda={}'.format(lam),
                        relative_error(bounds.gap, 7 / (12 * np.pi) * np.sqrt(1.5 * lam ** 3)), 1e-9)
        suite.margin('gap < 0.021 lambda={}'.format(lam), (0.021 - bounds.gap) / 0.021)
        molecular = model.molecular_x_root()
        suite.tolerance('x_root residual lambda={}'.format(lam), molecular.residual, 1e-9)
        suite.margin('z_max < lower lambda={}'.format(lam), (bounds.lower - molecular.z_max) / bounds.lower)
    return suite.result()

def certificate_suite(seed=0, alpha=ALPHA_PHYSICAL):
    suite = Suite('certificate')
    rng = np.random.default_rng(seed)
    for k in range(20):
        s = rng.uniform(0.1, 100)
        b1 = rng.uniform(0.1, 1.5)
        al = rng.uniform(1e-3, 1)
        _, value = xi1_pointwise_min(s, b1, al)
        t0 = (al * s / (b1 * b1)) ** 3
        res = scipy.optimize.minimize_scalar(lambda t: b1 * b1 * t ** (4 / 3) - al * s * t,
                                             bracket=(0, t0 / 4, 2 * t0), method='golden')
        suite.tolerance('xi1 closed form #{}'.format(k), relative_error(value, res.fun), 1e-8)

    a, b2, z = 0.3, 0.8, 60.0
    for D in [0.1, 1.0, 7.5]:
        quad, _ = scipy.integrate.quad(lambda r: 4 * np.pi * r * r * (2 * a * b2 / D) ** 4, 0, D, epsabs=0, epsrel=1e-13)
        suite.tolerance('ball integral D={}'.format(D), relative_error(ball_integral(D, a, b2), quad), 1e-10)
        half_space, _ = scipy.integrate.dblquad(lambda mu, r: 2 * np.pi * r ** -2, D, np.inf,
                                                lambda r: -1.0, lambda r: min(1.0, D / r))
        suite.tolerance('exterior bound D={}'.format(D),
                        relative_error(exterior_bound(D, z), z ** 4 * half_space), 1e-4)

    for lam in [lambdas['tomishima-yonei'], lambdas['kirzhnits']]:
        model = Utfw(lam, alpha)
        positions = [[0, 0, -1], [0, 0, 1]]
        saturated = largest_certified_charge(model, positions)
        suite.tolerance('saturation lambda={}'.format(lam),
                        relative_error(saturated, model.molecular_x_root().z_max), 1e-6)

    model = Utfw(lambdas['tomishima-yonei'], alpha)
    stable = MoleculeConfig.from_arrays(50.0, [[0, 0, -1], [0, 0, 1]])
    suite.margin('pair z=50 certified', 1.0 if model.certify(stable).stable else -1.0)
    search = model.search_negative_molecular(stable, seed=seed)
    suite.margin('no negative trial energy when certified', 1.0 if search.verdict == 'none-found' else -1.0)
    return suite.result()

def lieb_yau_suite(seed=0, n_configs=20):
    suite = Suite('lieb_yau')
    rng = np.random.default_rng(seed)
    for k in range(n_configs):
        z = rng.uniform(1, 90)
        d = rng.uniform(0.5, 5)
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        center = rng.uniform(-1, 1, 3)
        config = MoleculeConfig.from_arrays(z, [center - 0.5 * d * direction, center + 0.5 * d * direction])
        blobs = []
        for j in range(2):
            s = rng.uniform(0.05, 0.5) * d
            grid = RadialGrid(300, 40 * s)
            blobs.append((config.positions[j], RadialDensity.from_function(lambda r, s=s: np.exp(-r / s), grid)))
        masses = rng.uniform(0, 2 * z, 2)
        gap = lieb_yau_gap(config, blobs, masses=masses)
        suite.margin('Lieb-Yau #{}'.format(k), gap / (z * z / d) + 1e-6)
    return suite.result()

def uncertainty_suite(seed=0, n_probes=100, radii=(0.5, 1.0, 3.0)):
    suite = Suite('uncertainty')
    rng = np.random.default_rng(seed)
    model = Utfw(lambdas['tomishima-yonei'])
    for R in radii:
        grid = probe_grid(R)
        for k in range(n_probes):
            probe = random_probe(rng, R, grid)
            lhs, rhs = mup_sides(probe, model.a, model.b)
            suite.margin('mup R={} #{}'.format(R, k), (lhs - rhs) / lhs + 1e-8)
        u = WeightFn.hardy(grid)
        for lam_f, C in [(1.0, 1.0), (50.0, 0.1)]:
            ratio = schwarz_ratio(u, extremal_f(u, lam_f, C))
            suite.tolerance('extremal ratio R={} lam={}'.format(R, lam_f), ratio - 1, 1e-6)
    sharp = sharpness_search(model.a, model.b, SHARP_COEFFICIENT)
    suite.margin('no violation at 4/3', sharp.relative_gap + 1e-8)
    violated = sharpness_search(model.a, model.b, SHARP_COEFFICIENT + 0.05)
    suite.margin('violation at 4/3 + 0.05', -violated.relative_gap)
    return suite.result()

def homogeneity_suite(alpha=ALPHA_PHYSICAL):
    suite = Suite('homogeneity')
    model = Utfw(lambdas['tomishima-yonei'], alpha)
    grid = RadialGrid()
    for family in [TrialFamily('exponential', 0.02, 1.0), TrialFamily('power', 0.02, 1.0, 4.5)]:
        rho = trial_density(family, grid)
        for t in [0.5, 2.0, 10.0]:
            suite.tolerance('{} t={}'.format(family.shape, t), model.scaling_check(rho, t, 50), 1e-6)
    return suite.result()

def instability_suite(seed=0, budget=5000, alpha=ALPHA_PHYSICAL):
    suite = Suite('instability')
    model = Utfw(lambdas['tomishima-yonei'], alpha)
    above = model.search_negative(80, budget=budget, seed=seed)
    witness = model.atomic_energy(trial_density(above.best_params, RadialGrid().refined(4)), 80)
    suite.margin('witness at z=80', 1.0 if above.verdict == 'negative-found' else -1.0)
    suite.margin('witness at 4x resolution', -witness / abs(above.best_energy) if above.best_energy else -1.0)
    below = model.search_negative(70, budget=budget, seed=seed)
    suite.margin('none at z=70', 1.0 if below.verdict == 'none-found' else -1.0)
    return suite.result()

suites = {
    'model_core': model_suite,
    'quadrature': quadrature_suite,
    'critical_charge': critical_charge_suite,
    'certificate': certificate_suite,
    'lieb_yau': lieb_yau_suite,
    'uncertainty': uncertainty_suite,
    'homogeneity': homogeneity_suite,
    'instability': instability_suite,
}

def run_suites(names=None, seed=0):
    """
    Run the named suites (all of them by default) and return their results.
    """
    if names is None:
        names = list(suites.keys())
    results = []
    for name in names:
        if name not in suites:
            raise ValueError('Unknown suite {!r}. Available: {}'.format(name, list(suites.keys())))
        func = suites[name]
        logger.info('Running suite {}'.format(name))
        if name in ['certificate', 'lieb_yau', 'uncertainty', 'instability']:
            results.append(func(seed=seed))
        else:
            results.append(func())
    return results
