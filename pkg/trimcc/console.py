"""Characteristic cycles and trim maps

Usage:
  trimcc <command> <project> [<target>...] [--probe=<point>]... [options]
  trimcc (-h | --help)
  trimcc --version

Commands:
  conormal, polar-degrees, dual, segre, cc, csm, euler-obstruction,
  chern-mather, stringy, stringy-euler, trim-check, omega-check, small-check,
  fiber-product-check, smooth-restriction-check, rank-strata, generic-degree,
  incidence, pushforward, ic-report

Options:
  -h --help                         Show this screen.
  --version                         Show version.
  --seed=<seed>                     Seed for generic choices [default: 0]
  --max-gb-steps=<n>                Cap on Groebner basis reduction steps
  --max-saturation-iters=<n>        Cap on iterated quotients
  --output=<format>                 text or structured [default: text]
  --report=<file>                   Also write the structured report to a file
  --charts=<label>                  Chart of a map to use [default: all]
  --stratification=<name>           Stratification of the target
  --probe=<point>                   Named probe or coordinates like 1,0,0
  --chow=<name>                     Chow ring data for stringy commands
  --mode=<mode>                     trim, generically-finite or support-only
                                    [default: generically-finite]
  --parallel                        Evaluate charts concurrently
  --with-timing                     Add the wall time to the report
  --raise                           Raise errors instead of reporting them
  --verbose                         Log computation steps

"""  # noqa: E501

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import OrderedDict
import io
import logging
from multiprocessing.pool import ThreadPool
import time
import warnings

from docopt import docopt

from trimcc import __version__
from trimcc.calculus import (
    cc_inverse,
    cc_transform,
    chern_mather,
    chern_schwartz_macpherson,
    euler_obstruction,
    euler_obstruction_via_atlas,
    ic_report,
    stringy_class,
    stringy_euler_number,
)
from trimcc.conormal import (
    conormal_ideal,
    dual_variety,
    fiber_ideal as conormal_fiber_ideal,
    segre_class,
)
from trimcc.cycles import ConstructibleFunction, CycleKey
from trimcc.exceptions import (
    Error,
    InputError,
    InternalError,
    PreconditionError,
)
from trimcc.morphism import (
    fiber_product_smallness,
    generic_degree,
    merge_small_reports,
    merge_trim_reports,
    omega_trim_check,
    rank_strata,
    small_check,
    smooth_restriction_check,
    trim_check,
)
from trimcc.project import Project
from trimcc.pushforward import (
    incidence_scheme,
    pushforward_generically_finite,
    pushforward_support,
    pushforward_trim,
)
from trimcc.report import Report
from trimcc.settings import current_limits, limits
from trimcc.types import PushforwardMode


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2


def exit_code(error):
    if isinstance(error, (InputError, PreconditionError)):
        return EXIT_INPUT
    return EXIT_LIMIT


class Context(object):

    """Resolved flags of one invocation."""

    def __init__(self, project, targets, flags):
        self.project = project
        self.targets = list(targets)
        self.seed = _int_or_none(flags.get('seed')) or 0
        self.charts = flags.get('charts') or 'all'
        self.stratification_name = flags.get('stratification')
        self.probe_values = list(flags.get('probe') or [])
        self.mode = flags.get('mode') or 'generically-finite'
        self.chow_name = flags.get('chow')
        self.parallel = bool(flags.get('parallel'))

    def target(self, index, what):
        try:
            return self.targets[index]
        except IndexError:
            raise InputError('Missing argument: {0}'.format(what))

    def probes(self, name):
        if self.probe_values:
            return OrderedDict(
                (value, self.project.probe(name, value))
                for value in self.probe_values)
        probes = self.project.probes(name)
        if not probes:
            raise InputError('No probe points for {0}'.format(name))
        return probes

    def chow_spec(self):
        """The Chow data named by --chow or the first target, and the rest."""
        if self.chow_name:
            return self.project.chow_spec(self.chow_name), self.targets
        name = self.target(0, 'chow spec')
        return self.project.chow_spec(name), self.targets[1:]

    def charts_of(self, name):
        return self.project.map(name).select(self.charts)

    def stratification(self):
        name = self.stratification_name
        if name is None:
            names = self.project.names('stratifications')
            if len(names) != 1:
                raise InputError('Pass --stratification=<name>')
            name = names[0]
        return self.project.stratification(name)

    def each_chart(self, function, charts):
        """Apply `function` to every chart, keeping chart order."""
        if not self.parallel or len(charts) < 2:
            return [function(chart) for chart in charts]
        settings = current_limits()._asdict()

        def worker(chart):
            with limits(**settings):
                return function(chart)

        pool = ThreadPool(len(charts))
        try:
            return pool.map(worker, charts)
        finally:
            pool.close()
            pool.join()


def _combination(ctx, start):
    """Targets like `conic` or `conic:-2` as a sum of Euler obstructions."""
    terms = {}
    for text in ctx.targets[start:]:
        name, _, coefficient = text.partition(':')
        try:
            coefficient = int(coefficient) if coefficient else 1
        except ValueError:
            raise InputError('Invalid multiplicity in {0}'.format(text))
        key = CycleKey(ctx.project.variety(name))
        terms[key] = terms.get(key, 0) + coefficient
    if not terms:
        raise InputError('Missing argument: variety')
    return ConstructibleFunction(terms)


def _point(point):
    return ','.join(str(value) for value in point)


def do_conormal(ctx, report):
    variety = ctx.project.variety(ctx.target(0, 'variety'))
    data = conormal_ideal(variety, ctx.seed)
    report.result['ambient'] = 'P^{0} x P^{0}'.format(data.ambient_dimension)
    report.result['dimension'] = data.ambient_dimension - 1
    report.result['polar_degrees'] = list(data.polar_degrees)
    report.result['generators'] = [str(g) for g in data.ideal.generators]


def do_polar_degrees(ctx, report):
    variety = ctx.project.variety(ctx.target(0, 'variety'))
    data = conormal_ideal(variety, ctx.seed)
    report.result['polar_degrees'] = list(data.polar_degrees)
    report.result['polar_variety_degrees'] = list(
        data.polar_variety_degrees())
    report.add_table(
        'multidegree', ['j', 'delta_j'], enumerate(data.polar_degrees))


def do_dual(ctx, report):
    variety = ctx.project.variety(ctx.target(0, 'variety'))
    dual = dual_variety(variety, ctx.seed)
    report.result['variables'] = list(dual.ring.variables)
    report.result['generators'] = [str(g) for g in dual.ideal.canonical()]
    report.result['dimension'] = dual.dimension
    report.result['degree'] = dual.degree


def do_segre(ctx, report):
    variety = ctx.project.variety(ctx.target(0, 'variety'))
    if len(ctx.targets) > 1:
        subscheme = ctx.project.ideal(ctx.targets[1])
        segre = segre_class(subscheme, variety, ctx.seed)
        report.result['segre_class'] = list(segre.components)
        report.result['ambient'] = segre.ambient
        return
    data = conormal_ideal(variety, ctx.seed)
    rows = []
    for name, point in ctx.probes(variety.name).items():
        segre = segre_class(conormal_fiber_ideal(data, point), data, ctx.seed)
        rows.append([name, _point(point), list(segre.components)])
    report.result['segre_classes'] = OrderedDict(
        (row[0], row[2]) for row in rows)
    report.add_table(
        'conormal fibers', ['probe', 'point', 'segre class'], rows)


def do_cc(ctx, report):
    alpha = _combination(ctx, 0)
    cycle = cc_transform(alpha)
    report.result['cycle'] = cycle.to_json()
    report.result['inverse_matches'] = cc_inverse(cycle) == alpha
    report.add_table(
        'transform', ['variety', 'dim', 'Eu coefficient', 'T* coefficient'],
        [[key.name, key.dimension, alpha[key], cycle[key]]
         for key in alpha.keys()])
    if ctx.probe_values:
        name = alpha.keys()[0].variety.name
        report.result['values'] = OrderedDict(
            (value, alpha.evaluate(ctx.project.probe(name, value), ctx.seed))
            for value in ctx.probe_values)


def do_csm(ctx, report):
    alpha = _combination(ctx, 0)
    result = chern_schwartz_macpherson(alpha, ctx.seed)
    report.result['class'] = list(result.components)
    report.result['text'] = str(result)


def do_euler_obstruction(ctx, report):
    name = ctx.target(0, 'variety or map')
    rows = []
    if name in ctx.project.names('maps'):
        charts = ctx.charts_of(name)
        asserted = ctx.project.assertions(name)
        for probe, point in ctx.probes(name).items():
            rows.append([probe, _point(point), euler_obstruction_via_atlas(
                charts, point, asserted.get(point), ctx.seed)])
        report.result['route'] = 'trim fiber'
    else:
        variety = ctx.project.variety(name)
        data = conormal_ideal(variety, ctx.seed)
        for probe, point in ctx.probes(name).items():
            rows.append([probe, _point(point), euler_obstruction(
                data, point, ctx.seed)])
        report.result['route'] = 'segre class'
    report.result['values'] = OrderedDict((row[0], row[2]) for row in rows)
    report.add_table('euler obstruction', ['probe', 'point', 'Eu'], rows)


def do_chern_mather(ctx, report):
    variety = ctx.project.variety(ctx.target(0, 'variety'))
    result = chern_mather(variety, ctx.seed)
    report.result['class'] = list(result.components)
    report.result['text'] = str(result)


def do_stringy(ctx, report):
    spec, rest = ctx.chow_spec()
    result = stringy_class(spec)
    report.result['class'] = list(result.components)
    report.result['text'] = str(result)
    if rest:
        variety = ctx.project.variety(rest[0])
        mather = chern_mather(variety, ctx.seed)
        report.result['chern_mather'] = list(mather.components)
        report.result['equal'] = result == mather


def do_stringy_euler(ctx, report):
    spec, _ = ctx.chow_spec()
    report.result['stringy_euler_number'] = stringy_euler_number(spec)


def _trim_command(check):
    def command(ctx, report):
        charts = ctx.charts_of(ctx.target(0, 'map'))
        reports = ctx.each_chart(check, charts)
        for chart, chart_report in zip(charts, reports):
            headers, rows = chart_report.table()
            report.add_table(chart.label, headers, rows)
        merged = merge_trim_reports(reports)
        report.result.update(merged.to_json())
        if len(reports) == 1:
            report.result.update(reports[0].extra)
    return command


def do_small_check(ctx, report):
    charts = ctx.charts_of(ctx.target(0, 'map'))
    stratification = ctx.stratification()
    reports = ctx.each_chart(
        lambda chart: small_check(chart, stratification), charts)
    for chart, chart_report in zip(charts, reports):
        headers, rows = chart_report.table()
        report.add_table(chart.label, headers, rows)
    report.result.update(
        merge_small_reports(reports, stratification).to_json())


def do_fiber_product_check(ctx, report):
    charts = ctx.charts_of(ctx.target(0, 'map'))
    results = ctx.each_chart(
        lambda chart: fiber_product_smallness(chart, ctx.seed), charts)
    report.result['is_small'] = all(r.is_small for r in results)
    report.add_table(
        'fiber products',
        ['chart', 'dim YxY', 'dim residual', 'dim Y', 'small'],
        [[chart.label, r.fiber_product_dimension, r.residual_dimension,
          r.source_dimension, r.is_small]
         for chart, r in zip(charts, results)])


def do_smooth_restriction_check(ctx, report):
    charts = ctx.charts_of(ctx.target(0, 'map'))
    stratification = ctx.stratification()
    results = ctx.each_chart(
        lambda chart: smooth_restriction_check(chart, stratification), charts)
    for chart, result in zip(charts, results):
        headers, rows = result.table()
        report.add_table(chart.label, headers, rows)
    report.result['all_pass'] = all(r.all_pass for r in results)
    report.result['is_small'] = all(r.is_small for r in results)
    report.result['implies_trim'] = all(r.implies_trim for r in results)


def do_rank_strata(ctx, report):
    charts = ctx.charts_of(ctx.target(0, 'map'))
    results = ctx.each_chart(rank_strata, charts)
    for chart, strata in zip(charts, results):
        report.add_table(
            chart.label, ['d', 'dim Y_d'], enumerate(strata.dimensions()))
    report.result['dimensions'] = OrderedDict(
        (chart.label, strata.dimensions())
        for chart, strata in zip(charts, results))


def do_generic_degree(ctx, report):
    charts = ctx.charts_of(ctx.target(0, 'map'))
    results = ctx.each_chart(
        lambda chart: generic_degree(chart, ctx.seed), charts)
    degrees = sorted(set(r.degree for r in results))
    if len(degrees) != 1:
        raise InternalError(
            'Charts disagree on the generic degree: {0}'.format(degrees))
    report.result['degree'] = degrees[0]
    report.add_table(
        'generic fibers', ['chart', 'degree', 'points', 'with multiplicity'],
        [[chart.label] + list(r) for chart, r in zip(charts, results)])


def do_incidence(ctx, report):
    charts = ctx.charts_of(ctx.target(0, 'map'))
    stratification = ctx.stratification()

    def schemes(chart):
        stratification.check_inside(chart)
        return [incidence_scheme(chart, stratum)
                for stratum in stratification.proper()]

    results = ctx.each_chart(schemes, charts)
    for chart, result in zip(charts, results):
        report.add_table(
            chart.label, ['stratum', 'dim F', 'dim X', 'verdict'],
            [[s.stratum.name, s.dimension, s.threshold, s.verdict.value]
             for s in result])
    report.result['excluded'] = sorted(set(
        s.stratum.name for result in results for s in result
        if s.excluded) - set(
        s.stratum.name for result in results for s in result
        if not s.excluded))


PUSHFORWARDS = {
    PushforwardMode.TRIM.value: pushforward_trim,
    PushforwardMode.GENERICALLY_FINITE.value: pushforward_generically_finite,
}


def do_pushforward(ctx, report):
    charts = ctx.charts_of(ctx.target(0, 'map'))
    stratification = ctx.stratification()
    if ctx.mode == PushforwardMode.SUPPORT_ONLY.value:
        def compute(chart):
            return pushforward_support(chart, stratification)
    elif ctx.mode in PUSHFORWARDS:
        def compute(chart):
            return PUSHFORWARDS[ctx.mode](chart, stratification, ctx.seed)
    else:
        raise InputError('Unknown pushforward mode {0}'.format(ctx.mode))

    results = ctx.each_chart(compute, charts)
    for chart, result in zip(charts, results):
        headers, rows = result.table()
        report.add_table(chart.label, headers, rows)
    support = []
    for result in results:
        support.extend(s for s in result.support() if s not in support)
    report.result['mode'] = results[0].mode.value
    report.result['support'] = support
    cycles = [r.cycle for r in results]
    if cycles[0] is not None and all(c == cycles[0] for c in cycles):
        report.result['cycle'] = cycles[0].to_json()
        report.result['multiplicity'] = results[0].multiplicity


def do_ic_report(ctx, report):
    variety = ctx.project.variety(ctx.target(0, 'variety'))
    name = ctx.target(1, 'map')
    charts = ctx.charts_of(name)
    stratification = None
    if ctx.stratification_name:
        stratification = ctx.stratification()
    probes = ctx.probes(variety.name)
    result = ic_report(
        variety, charts, list(probes.values()), ctx.project.assertions(name),
        stratification, ctx.seed)
    report.result.update(result.to_json())
    report.add_table(
        'stalk Euler characteristics', ['probe', 'point', 'chi'],
        [[probe, _point(point), chi]
         for probe, (point, chi) in zip(probes, result.stalk_chi)])


COMMANDS = OrderedDict([
    ('conormal', do_conormal),
    ('polar-degrees', do_polar_degrees),
    ('dual', do_dual),
    ('segre', do_segre),
    ('cc', do_cc),
    ('csm', do_csm),
    ('euler-obstruction', do_euler_obstruction),
    ('chern-mather', do_chern_mather),
    ('stringy', do_stringy),
    ('stringy-euler', do_stringy_euler),
    ('trim-check', _trim_command(trim_check)),
    ('omega-check', _trim_command(omega_trim_check)),
    ('small-check', do_small_check),
    ('fiber-product-check', do_fiber_product_check),
    ('smooth-restriction-check', do_smooth_restriction_check),
    ('rank-strata', do_rank_strata),
    ('generic-degree', do_generic_degree),
    ('incidence', do_incidence),
    ('pushforward', do_pushforward),
    ('ic-report', do_ic_report),
])


def _int_or_none(value):
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise InputError('Expected an integer, got {0}'.format(value))


def run(command, project_path, targets=(), flags=None):
    """
    Run one command against a project file.

    Returns the report and the exit code: 0 on success, 1 for input and
    precondition errors, 2 when a computation limit is hit or an internal
    cross-check fails.

    """
    flags = flags or {}
    seed = flags.get('seed') or 0
    try:
        seed = int(seed)
    except ValueError:
        pass
    report = Report(command, OrderedDict([
        ('project', project_path),
        ('targets', list(targets)),
    ]), seed=seed)
    for key in ('charts', 'stratification', 'probe', 'mode', 'chow'):
        if flags.get(key):
            report.inputs[key] = flags[key]

    start = time.time()
    code = EXIT_OK
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        try:
            if command not in COMMANDS:
                raise InputError('Unknown command: {0}'.format(command))
            with limits(
                    max_gb_steps=_int_or_none(flags.get('max_gb_steps')),
                    max_saturation_iters=_int_or_none(
                        flags.get('max_saturation_iters'))):
                project = Project.load(project_path)
                ctx = Context(project, targets, flags)
                COMMANDS[command](ctx, report)
        except Error as e:
            if flags.get('raise'):
                raise
            code = exit_code(e)
            report.error = OrderedDict([
                ('type', type(e).__name__),
                ('message', str(e)),
                ('exit_code', code),
            ])
            statistics = getattr(e, 'statistics', None)
            if statistics:
                report.error['statistics'] = statistics
            logger.info('%s failed: %s', command, e)
    for warning in caught:
        report.add_warning(warning.message)
    if flags.get('with_timing'):
        report.timing = time.time() - start
    return report, code


def main():
    arguments = docopt(__doc__, version=__version__.__version__)

    if arguments.get('--verbose'):
        logging.basicConfig(
            level=logging.INFO,
            format='%(asctime)s %(name)s %(levelname)s %(message)s')

    flags = {
        'seed': arguments.get('--seed'),
        'max_gb_steps': arguments.get('--max-gb-steps'),
        'max_saturation_iters': arguments.get('--max-saturation-iters'),
        'charts': arguments.get('--charts'),
        'stratification': arguments.get('--stratification'),
        'probe': arguments.get('--probe'),
        'mode': arguments.get('--mode'),
        'chow': arguments.get('--chow'),
        'parallel': arguments.get('--parallel'),
        'with_timing': arguments.get('--with-timing'),
        'raise': arguments.get('--raise'),
    }
    report, code = run(
        arguments['<command>'], arguments['<project>'],
        arguments.get('<target>') or [], flags)

    if arguments.get('--report'):
        with io.open(arguments['--report'], 'w', encoding='utf-8') as fp:
            fp.write(report.render_structured())
            fp.write('\n')
    print(report.render(arguments.get('--output') or 'text'))
    return code
