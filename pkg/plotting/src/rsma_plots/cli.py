import argparse
import sys

from .render import PlotError, PlotSpec, render


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="plot_sweep", description="Plot sum rate vs SNR from a sweep CSV"
    )
    parser.add_argument("--in", dest="input_csv", required=True)
    parser.add_argument("--out", dest="output_image", required=True)
    parser.add_argument("--theta1", type=float, default=None)
    parser.add_argument("--title", default="Sum rate vs SNR")
    args = parser.parse_args(argv)
    spec = PlotSpec(
        input_csv=args.input_csv,
        output_image=args.output_image,
        theta1_filter=args.theta1,
        title=args.title,
    )
    try:
        series = render(spec)
    except (PlotError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output_image} ({len(series)} lines)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
