"""JSON analysis report of a closed mesh."""

import json
import logging
from dataclasses import asdict, dataclass, field

import numpy as np
import pandas as pd
from natsort import natsorted  # type: ignore
from tabulate import tabulate

from rectipoly.errors import CollinearityViolation, NotRectangleFaced
from rectipoly.helpers import fill_kwargs

__all__ = ["SCHEMA", "AnalysisReport", "analyze"]

logger = logging.getLogger(__name__)

SCHEMA = "rectipoly.analysis/1"


def _histogram(counts):
    return {str(k): int(counts[k]) for k in natsorted(counts)}


def _red_graph_entry(rg):
    walks = rg.facial_walks()
    d = rg.average_degree()
    return {
        "component": rg.component_id,
        "nodes": rg.n_nodes,
        "arcs": rg.n_arcs,
        "mesh_edges": rg.n_mesh_edges,
        "degree_histogram": _histogram(rg.degree_histogram()),
        "walk_length_histogram": _histogram(rg.walk_length_histogram()),
        "d": str(d),
        "d_value": float(d),
        "k": min(len(w) for w in walks),
    }


def _audit_entry(mesh, tol):
    from rectipoly.redgraph import g01_audit

    try:
        audit = g01_audit(mesh, tol=tol)
    except NotRectangleFaced as e:
        return {"verdict": "NotApplicable", "note": str(e), "components": []}

    components = [
        {
            "component": c.component_id,
            "holds": c.bound.holds,
            "slack": str(c.bound.slack),
            "min_degree": c.min_degree,
            "degree_floor_ok": c.degree_floor_ok,
            "walks_ok": c.walks_ok,
        }
        for c in audit.components
    ]
    return {"verdict": audit.verdict, "note": audit.note, "components": components}


@dataclass
class AnalysisReport:
    """Everything `rectipoly analyze` reports about a closed mesh.

    Angles are in radians, with degree annotations next to them. All lists
    and histograms are in a fixed order so reports can be diffed."""

    topology: dict
    rectangles: dict
    dihedrals: list
    certificate: dict
    red_graph: list
    audit: dict
    version: str
    tolerances: dict
    notes: list = field(default_factory=list)
    schema: str = SCHEMA

    @classmethod
    def from_mesh(cls, mesh, tol=None):
        """Run every analysis on a closed mesh.

        Examples
        --------
        >>> import rectipoly as rp
        >>> report = AnalysisReport.from_mesh(rp.constructions.make_cube())
        >>> report.topology["genus"], report.certificate["status"]
        (0, 'Pass')
        """

        import rectipoly
        from rectipoly.orthogonal import classify_edges, orthogonality_certificate, rectangle_check
        from rectipoly.redgraph import build_red_graph

        kwargs = fill_kwargs({"tol": tol})
        tol = kwargs["tol"]

        topology = mesh.topology().as_dict()

        rectangles = rectangle_check(mesh, tol=tol)
        inventory = [
            {"long": long, "short": short, "count": n} for (long, short), n in rectangles.counts(decimals=9).items()
        ]

        classification = classify_edges(mesh, tol=tol)
        histogram = classification.folded_histogram(kwargs["bucket"])
        dihedrals = [
            {"folded": float(row.Folded), "degrees": float(row.Degrees), "count": int(row.Count)}
            for row in histogram.itertuples(index=False)
        ]

        certificate = orthogonality_certificate(mesh, tol=tol)

        notes = []
        try:
            red_graph = [_red_graph_entry(rg) for rg in build_red_graph(mesh, classification)]
        except CollinearityViolation as e:
            logger.warning("no red graph: %s", e)
            notes.append(str(e))
            red_graph = []

        return cls(
            topology=topology,
            rectangles={
                "all_rectangles": rectangles.all_rectangles,
                "non_rectangles": [int(f) for f in rectangles.non_rectangles],
                "inventory": inventory,
            },
            dihedrals=dihedrals,
            certificate={"status": certificate.status, "red_edges": len(certificate.red_edges)},
            red_graph=red_graph,
            audit=_audit_entry(mesh, tol),
            version=rectipoly.__version__,
            tolerances={k: kwargs[k] for k in ("tol", "collinear_tol", "bucket")},
            notes=notes,
        )

    def as_dict(self):
        d = asdict(self)
        schema = d.pop("schema")
        return {"schema": schema, **d}

    def to_json(self, path=None, indent=2):
        """JSON text of the report; written to path if given."""

        text = json.dumps(self.as_dict(), indent=indent, default=_json_default) + "\n"

        if path:
            with open(path, "w+") as f:
                f.write(text)
        else:
            return text

    def summary(self, to_stdout=True, return_df=False):
        """Print the headline numbers as a table."""

        rows = {
            "V": self.topology["V"],
            "E": self.topology["E"],
            "F": self.topology["F"],
            "chi": self.topology["chi"],
            "genus": self.topology["genus"],
            "rectangle faces": "all" if self.rectangles["all_rectangles"] else "not all",
            "certificate": self.certificate["status"],
            "red edges": self.certificate["red_edges"],
            "red components": len(self.red_graph),
            "audit": self.audit["verdict"],
        }
        for entry in self.dihedrals:
            rows[f"folded {entry['degrees']:.4f} deg"] = entry["count"]

        summary = pd.DataFrame({"analysis": pd.Series(rows, dtype=object)})

        if to_stdout:
            print(tabulate(summary, headers=summary.columns, tablefmt="psql"))

        if return_df:
            return summary


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def analyze(mesh, tol=None):
    return AnalysisReport.from_mesh(mesh, tol=tol)
