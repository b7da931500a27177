"""Turn a dataclass config into command-line flags."""

import argparse
import dataclasses


def parse_config(cls, argv=None, description=None):
    ap = argparse.ArgumentParser(description=description or cls.__doc__)
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        ap.add_argument(flag, type=type(f.default), default=f.default, help=f"default: {f.default}")
    return cls(**vars(ap.parse_args(argv)))
