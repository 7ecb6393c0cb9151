"""Command-line front end: analyze, render, fit and serve."""

from __future__ import annotations

import json
import sys

import click

from .analysis import analyze_pattern, build_report
from .errors import EngineError
from .fitting import fit_theta, median_profile, read_measurements_csv
from .midi import export_midi
from .pattern import load_pattern
from .render import RenderOptions, render
from .service import create_app
from .timing import FeelProfile


@click.group()
def main():
    """Analyze sequencer patterns, fit swing parameters, render performances."""


@main.command()
@click.argument("pattern_file", type=click.Path(exists=True, dir_okay=False))
def analyze(pattern_file):
    """Print the metric/phrase analysis report for a pattern file."""
    try:
        pattern = load_pattern(pattern_file)
        report = build_report(analyze_pattern(pattern))
    except EngineError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(report, indent=2))


@main.command(name="render")
@click.argument("pattern_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--profile", "profile_file", type=click.Path(exists=True, dir_okay=False),
              help="Feel profile JSON (defaults to a straight feel).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--midi", "midi_file", type=click.Path(dir_okay=False),
              help="Also write a standard MIDI file here.")
@click.option("--ppq", type=int, default=480, show_default=True)
@click.option("--switch-probability", type=float, default=0.15, show_default=True)
@click.option("--walk-step", type=float, default=0.02, show_default=True)
@click.option("--velocity-mode", type=click.Choice(["metric", "backbeat", "offbeat"]),
              default="metric", show_default=True)
@click.option("--top-k", type=int, default=4, show_default=True)
@click.option("--out", "out_file", type=click.Path(dir_okay=False),
              help="Write the timeline JSON here instead of stdout.")
def render_command(pattern_file, profile_file, seed, midi_file, ppq,
                   switch_probability, walk_step, velocity_mode, top_k, out_file):
    """Render a pattern to a timed, velocitied timeline (and optionally MIDI)."""
    try:
        pattern = load_pattern(pattern_file)
        if profile_file:
            with open(profile_file, "r", encoding="utf-8") as fh:
                profile = FeelProfile.from_dict(json.load(fh))
        else:
            profile = FeelProfile()
        options = RenderOptions(
            seed=seed,
            switch_probability=switch_probability,
            walk_step=walk_step,
            velocity_mode=velocity_mode,
            top_k=top_k,
        )
        analyses = analyze_pattern(pattern)
        interpretation_lists = [
            list(a.interpretations) if a.ok else None for a in analyses
        ]
        phrase_list = [a.phrases if a.ok else None for a in analyses]
        timeline = render(pattern, interpretation_lists, phrase_list, profile, options)
        if midi_file:
            with open(midi_file, "wb") as fh:
                fh.write(export_midi(timeline, ppq=ppq))
    except EngineError as exc:
        raise click.ClickException(str(exc))
    text = json.dumps(timeline.to_dict(), indent=2)
    if out_file:
        with open(out_file, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command()
@click.argument("measurements_csv", type=click.Path(exists=True, dir_okay=False))
def fit(measurements_csv):
    """Fit swing parameters to measured onsets (CSV: bar_id,onset_ms)."""
    try:
        bars = read_measurements_csv(measurements_csv)
        result = fit_theta(bars)
        medians = median_profile(bars)
    except EngineError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(result.to_dict(), indent=2))
    header = ["p1", "p2", "p3", "p4", "p5", "p6", "theta1", "theta2", "theta3", "N"]
    values = ["%.3f" % v for v in medians] + [
        "%.2f" % result.params.theta1,
        "%.2f" % result.params.theta2,
        "%.2f" % result.params.theta3,
        str(result.n_bars),
    ]
    width = max(len(h) for h in header) + 2
    click.echo("".join(h.rjust(width) for h in header))
    click.echo("".join(v.rjust(width) for v in values))


@main.command()
@click.option("--port", type=int, default=8765, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Run the HTTP engine service."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="info")


if __name__ == "__main__":
    sys.exit(main())
