"""Graded extension semantics for finite abstract argumentation frameworks."""

from .core import (Aaf, ArgSet, ExtensionFamily, Params, canonicalize, emit_apx, emit_dot, emit_tgf,
                   from_json, parse_apx, parse_tgf, to_json)
from .errors import (CapExceeded, DefenseCycle, GradedAfError, InvariantViolation, ParseError,
                     PreconditionError)
from .fixpoint import gfp, is_self_defended, iterate_defense, lfp_from, reachability_profile, wf_on, wf_plus_on
from .kernel import defense, enumerate_attacker_combinations, neutrality, range_plus
from .semantics import Catalog, eager, enumerate_family, ideal, interval, maximal_of, parse_spec, range_maximal

__version__ = "0.1.0"

__all__ = [
    "Aaf", "ArgSet", "ExtensionFamily", "Params", "canonicalize", "emit_apx", "emit_dot", "emit_tgf",
    "from_json", "parse_apx", "parse_tgf", "to_json",
    "CapExceeded", "DefenseCycle", "GradedAfError", "InvariantViolation", "ParseError", "PreconditionError",
    "gfp", "is_self_defended", "iterate_defense", "lfp_from", "reachability_profile", "wf_on", "wf_plus_on",
    "defense", "enumerate_attacker_combinations", "neutrality", "range_plus",
    "Catalog", "eager", "enumerate_family", "ideal", "interval", "maximal_of", "parse_spec", "range_maximal",
]
