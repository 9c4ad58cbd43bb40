"""Run the discriminant example and print the trace."""
import argparse
import time

from symforms.demo import demo_delta


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--order", type=int, default=20)
    args = p.parse_args()
    start = time.perf_counter()
    rep = demo_delta(args.order)
    print(rep.text())
    print(f"elapsed {time.perf_counter() - start:.3f} s")


if __name__ == "__main__":
    main()
