"""``eval``: single probabilities and bound-chain values."""

from fractions import Fraction

import click

from commands.params import RATIONAL, format_option
from models.figure import OutputFormat
from models.probability import BinomialParams
from services import bound_chain as bc
from services import camp_paulson as cp
from services import exact_binomial as eb
from utils.render import render_values

m_option = click.option("-m", "m", type=int, required=True, help="Number of trials.")
p_option = click.option("-p", "p", type=RATIONAL, required=True, help='Success probability, e.g. "3/5" or "0.6".')
k_option = click.option("-k", "k", type=int, required=True, help="Outcome index.")


def _emit(entries, fmt: OutputFormat) -> int:
    click.echo(render_values(entries, fmt), nl=False)
    return 0


@click.group("eval")
def eval_group():
    """Evaluate probabilities and bounds."""


@eval_group.command("pmf")
@m_option
@p_option
@k_option
@format_option(OutputFormat.PLAIN)
def pmf_cmd(m: int, p: Fraction, k: int, fmt: OutputFormat) -> int:
    """P[X = k]."""
    return _emit([("pmf", eb.pmf(BinomialParams(m=m, p=p), k))], fmt)


@eval_group.command("cdf")
@m_option
@p_option
@k_option
@format_option(OutputFormat.PLAIN)
def cdf_cmd(m: int, p: Fraction, k: int, fmt: OutputFormat) -> int:
    """P[X <= k]."""
    return _emit([("cdf", eb.cdf(BinomialParams(m=m, p=p), k))], fmt)


@eval_group.command("upper-tail")
@m_option
@p_option
@k_option
@format_option(OutputFormat.PLAIN)
def upper_tail_cmd(m: int, p: Fraction, k: int, fmt: OutputFormat) -> int:
    """P[X >= k]."""
    return _emit([("upper_tail", eb.upper_tail(BinomialParams(m=m, p=p), k))], fmt)


@eval_group.command("tail-above-mean")
@m_option
@p_option
@format_option(OutputFormat.PLAIN)
def tail_above_mean_cmd(m: int, p: Fraction, fmt: OutputFormat) -> int:
    """F(m, p) = P[X >= m p]."""
    return _emit([("F", eb.tail_at_or_above_mean(BinomialParams(m=m, p=p)).value)], fmt)


@eval_group.command("tail-below-mean")
@m_option
@p_option
@format_option(OutputFormat.PLAIN)
def tail_below_mean_cmd(m: int, p: Fraction, fmt: OutputFormat) -> int:
    """G(m, p) = P[X <= m p]."""
    return _emit([("G", eb.tail_at_or_below_mean(BinomialParams(m=m, p=p)).value)], fmt)


@eval_group.command("grid-cdf")
@m_option
@k_option
@format_option(OutputFormat.PLAIN)
def grid_cdf_cmd(m: int, k: int, fmt: OutputFormat) -> int:
    """P[X <= k] under B(m, k/m)."""
    return _emit([("grid_cdf", eb.grid_cdf(m, k))], fmt)


@eval_group.command("grid-upper-tail")
@m_option
@k_option
@format_option(OutputFormat.PLAIN)
def grid_upper_tail_cmd(m: int, k: int, fmt: OutputFormat) -> int:
    """P[X >= k+1] under B(m, k/m)."""
    return _emit([("grid_upper_tail", eb.grid_upper_tail(m, k))], fmt)


@eval_group.command("camp-paulson")
@m_option
@p_option
@click.option("-j", "j", type=int, required=True, help="CDF index.")
@click.option("--full-support-exact", is_flag=True, help="Accept j = m and return exactly 1.")
@format_option(OutputFormat.PLAIN)
def camp_paulson_cmd(m: int, p: Fraction, j: int, full_support_exact: bool, fmt: OutputFormat) -> int:
    """Camp-Paulson estimate of P[X <= j] with its error envelope."""
    result = cp.camp_paulson_cdf(m, p, j, full_support_exact=full_support_exact)
    return _emit(
        [
            ("estimate", result.estimate),
            ("error_bound", result.error_bound),
            ("lower", result.lower),
            ("upper", result.upper),
        ],
        fmt,
    )


@eval_group.command("lemma2")
@m_option
@k_option
@format_option(OutputFormat.PLAIN)
def lemma2_cmd(m: int, k: int, fmt: OutputFormat) -> int:
    """Camp-Paulson upper bound on the grid CDF at (m, k)."""
    constants = bc.bound_constants(m, k)
    return _emit(
        [
            ("beta", constants.beta_k),
            ("gamma", constants.gamma_mk),
            ("argument", bc.lemma2_argument(m, k)),
            ("bound", bc.lemma2_bound(m, k)),
            ("exact_grid_cdf", eb.grid_cdf(m, k)),
        ],
        fmt,
    )


@eval_group.command("rho")
@m_option
@format_option(OutputFormat.PLAIN)
def rho_cmd(m: int, fmt: OutputFormat) -> int:
    """(1 - 1/m)^m + (1 - 1/m)^(m-1)."""
    return _emit([("rho", bc.rho(m))], fmt)


@eval_group.command("theorem-margin")
@m_option
@p_option
@format_option(OutputFormat.PLAIN)
def theorem_margin_cmd(m: int, p: Fraction, fmt: OutputFormat) -> int:
    """F(m, p) - 1/4 for p > 1/m."""
    result = bc.theorem_margin(m, p)
    return _emit([("margin", result.margin), ("holds", result.holds)], fmt)


@eval_group.command("corollary3-margin")
@m_option
@p_option
@format_option(OutputFormat.PLAIN)
def corollary3_margin_cmd(m: int, p: Fraction, fmt: OutputFormat) -> int:
    """G(m, p) - 1/4 for p < 1 - 1/m."""
    result = bc.corollary3_margin(m, p)
    return _emit([("margin", result.margin), ("holds", result.holds)], fmt)


@eval_group.command("constants")
@format_option(OutputFormat.PLAIN)
def constants_cmd(fmt: OutputFormat) -> int:
    """Analytic constants of the bound chain."""
    return _emit(
        [
            ("theta", bc.theta()),
            ("beta_1", bc.beta(1)),
            ("beta_2", bc.beta(2)),
            ("g_beta_2", bc.g_of_beta(bc.beta(2))),
            ("phi_at_g_ceiling", cp.std_normal_cdf(bc.G_BETA2_CEILING)),
            ("error_term_m2", bc.error_term_bound(2)),
            ("two_minus_three_theta", 2.0 - 3.0 * bc.theta()),
            ("theta_beta_limit", bc.theta_beta_limit()),
            ("corollary2_bound", bc.COROLLARY2_BOUND),
            ("rho_2", bc.rho(2)),
        ],
        fmt,
    )
