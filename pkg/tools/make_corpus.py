"""Regenerates the shipped connected-graph corpus (offline utility).

Enumerates all graphs on up to 7 vertices from the networkx atlas, keeps
the connected ones, and writes one graph6 line per graph into
src/icg/data/connected_n<k>.g6 using the package encoder. Run from the
repository root. The files are committed; tests cross-check them against
networkx instead of regenerating.
"""

from __future__ import annotations

import pathlib
import sys

import networkx as nx

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from icg.graph import Graph, to_graph6  # noqa: E402

EXPECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def main() -> None:
    data_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "icg" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    buckets: dict[int, list[str]] = {n: [] for n in EXPECTED_COUNTS}
    for atlas_graph in nx.graph_atlas_g()[1:]:
        n = atlas_graph.number_of_nodes()
        if n not in buckets or not nx.is_connected(atlas_graph):
            continue
        nodes = sorted(atlas_graph.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        g = Graph(n, [(index[a], index[b]) for a, b in atlas_graph.edges()])
        line = to_graph6(g)
        reference = nx.to_graph6_bytes(atlas_graph, header=False).decode().strip()
        if line != reference:
            raise SystemExit(f"encoder mismatch: {line} vs {reference}")
        buckets[n].append(line)
    for n, lines in buckets.items():
        if len(lines) != EXPECTED_COUNTS[n]:
            raise SystemExit(
                f"n={n}: got {len(lines)} connected graphs, expected {EXPECTED_COUNTS[n]}"
            )
        path = data_dir / f"connected_n{n}.g6"
        body = "\n".join([f"# all connected graphs on {n} vertices"] + lines)
        path.write_text(body + "\n")
        print(f"wrote {path} ({len(lines)} graphs)")


if __name__ == "__main__":
    main()
