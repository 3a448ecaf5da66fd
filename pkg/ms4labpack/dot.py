# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Graphviz DOT rendering of MS4 frames.
"""

import networkx as nx

import numpy as np

from ms4labpack.frame import e_clusters, layers, members, r_clusters
from ms4labpack.templates import render_pack_template


def r_digraph(f):
    """
    The strict part of R as a :py:class:`networkx.DiGraph` on worlds 0..n-1.
    """
    g = nx.DiGraph()
    g.add_nodes_from(range(f.n))
    g.add_edges_from((int(x), int(y)) for x, y in zip(*np.nonzero(f.R)) if x != y)
    return g


def r_hasse_edges(f):
    """
    Edges between R-clusters that are not implied by transitivity, each
    given by the least world of both clusters.
    """
    condensed = nx.condensation(r_digraph(f))
    reduced = nx.transitive_reduction(condensed)
    rep = {c: min(condensed.nodes[c]['members']) for c in condensed.nodes}
    return sorted((rep[u], rep[v]) for u, v in reduced.edges)


def _escape(label):
    return label.replace('\\', '\\\\').replace('"', '\\"')


def frame_to_dot(f, name='frame'):
    cluster_edges = []
    for cluster in r_clusters(f):
        worlds = members(cluster)
        cluster_edges += list(zip(worlds, worlds[1:]))

    return render_pack_template('frame.dot.mako', {
        'name': _escape(name),
        'labels': [_escape(label) for label in f.labels],
        'e_clusters': [members(c) for c in e_clusters(f)],
        'r_edges': r_hasse_edges(f),
        'cluster_edges': cluster_edges,
        'layers': [members(layer) for layer in layers(f).layers],
    })
