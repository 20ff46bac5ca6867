# SPDX-License-Identifier: MIT
from .core import *
from .cartan import AlgebraId, AlgebraDatum, CartanData, catalog_entry, symmetrize_and_normalize
from .roots import RootList, enumerate_positive_roots, highest_root_marks, highest_short_root_marks
from .shape import (ShapeMatrix, WeightGram, HyperbolicityReport, DomainGeometry, shape_matrix,
                    weight_gram, classify_hyperbolicity, embed_domain, isomorphic_shapes)
from .volume import (QForm, VolumeEstimate, ClosedForm, integrand, simplex_monomial_integral,
                     volume_series, volume_adaptive, volume_montecarlo, closed_form_volume)
from .lobachevsky import (clausen2, lobachevsky, polylog_circle, higher_lobachevsky,
                          evaluate_closed_form)
from .names import parse_name
from .atlas import AtlasRecord, run_single, run_atlas, compare_reference
