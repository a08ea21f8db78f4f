"""Command line: render <input.json> --out <fig.png> [--elev D] [--azim D]
[--color-by K]."""

from __future__ import annotations

import click

from .document import COLOR_KEYS, DocumentError, RenderSpec, load_document
from .draw import render


@click.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "output_path", required=True, type=click.Path(dir_okay=False), help="Output image path.")
@click.option("--elev", type=float, default=22.0, show_default=True, help="Camera elevation (degrees).")
@click.option("--azim", type=float, default=-60.0, show_default=True, help="Camera azimuth (degrees).")
@click.option("--color-by", type=click.Choice(COLOR_KEYS), default="fiber-id", show_default=True)
def main(input_path, output_path, elev, azim, color_by) -> None:
    """Draw the fiber polylines of a fibration export document."""
    try:
        doc = load_document(input_path)
        spec = RenderSpec(
            input_path=input_path,
            output_path=output_path,
            elev=elev,
            azim=azim,
            color_by=color_by,
            space_hint=doc["space"],
        )
        render(spec)
    except DocumentError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"wrote {output_path}")


if __name__ == "__main__":
    main()
