"""
Text and markdown rendering of result envelopes, and the `report`
command that bundles the disk, Steinhaus and notched-cube certificates
into one markdown document.
"""
from pages.constructions_pages import notched_page
from pages.inputs import JobParams
from pages.spectra_pages import disk_certificate_page
from pages.steinhaus_pages import steinhaus_certify_page
from utils.formatting import format_float, to_jsonable

DEFAULT_REPORT_DELTA = ['1/2', '1/3']


def _scalar(value):
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _scalars(result):
    """Top-level scalar fields of a result, in key order."""
    data = to_jsonable(result)
    return [(key, data[key]) for key in sorted(data)
            if key != 'markdown' and not isinstance(data[key], (dict, list)) and data[key] is not None]


def render_text(envelope):
    lines = [f"{envelope['command']}: {'PASS' if envelope['passed'] else 'FAIL'}"]
    lines += [f"  {key}: {_scalar(value)}" for key, value in _scalars(envelope['result'])]
    lines.append(f"  input_hash: {envelope['input_hash']}")
    return "\n".join(lines)


def render_markdown(envelope):
    markdown = envelope['result'].get('markdown')
    if markdown:
        return markdown
    lines = [
        f"# {envelope['command']}",
        "",
        f"**Verdict:** {'pass' if envelope['passed'] else 'fail'}",
        "",
        "| field | value |",
        "|---|---|",
    ]
    lines += [f"| {key} | {_scalar(value)} |" for key, value in _scalars(envelope['result'])]
    lines += ["", f"Input hash `{envelope['input_hash']}`, tilinglab {envelope['version']}."]
    return "\n".join(lines)


def _section(title, rows):
    lines = [f"## {title}", "", "| quantity | value |", "|---|---|"]
    lines += [f"| {label} | {_scalar(value)} |" for label, value in rows]
    return lines + [""]


def report_page(job):
    """Bundle three certificates; the report passes when all three do."""
    delta = job.optional('delta', DEFAULT_REPORT_DELTA)
    form = job.optional('form', 'paper3d')
    bound = job.integer('range', key='steinhaus_range')

    disk = disk_certificate_page(JobParams())
    steinhaus = steinhaus_certify_page(JobParams({'form': form, 'range': bound}))
    notched = notched_page(JobParams({'delta': delta}, job.overrides))
    sections = {'disk': to_jsonable(disk), 'steinhaus': to_jsonable(steinhaus), 'notched': to_jsonable(notched)}

    lines = ["# tilinglab certificate report", ""]
    lines += _section("Disk is not spectral", [
        ("first zero of J1", disk['j11']),
        ("first zero radius r0", disk['r0']),
        ("threshold 2/12^(1/4)", disk['threshold']),
        ("packing density bound", disk['thue_bound']),
        ("verdict", "non-spectral" if disk['verdict'] else "inconclusive"),
    ])
    lines += _section("Steinhaus quadratic form", [
        ("determinant", sections['steinhaus']['determinant']),
        ("determinant is a square", steinhaus['det_is_integer_square']),
        ("range checked", bound),
        ("all values sums of squares", steinhaus['representability']['all_representable']),
        ("verdict", steinhaus['verdict'] or "does not fire"),
    ])
    lines += _section("Notched cube lattice tiling", [
        ("side lengths", ", ".join(str(v) for v in delta)),
        ("determinant", sections['notched']['determinant']),
        ("exact level", sections['notched']['level']),
        ("Fourier max |f^|", notched['fourier']['max_deviation']),
        ("Fourier tolerance", notched['fourier']['tolerance']),
        ("tiles", notched['passed']),
    ])
    passed = disk['passed'] and steinhaus['passed'] and notched['passed']
    lines.append(f"**Overall:** {'all certificates pass' if passed else 'some certificates fail'}")
    return {'passed': passed, 'sections': sections, 'markdown': "\n".join(lines) + "\n"}


COMMANDS = {
    'report': report_page,
}
