# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""DWT-based region proposal."""

from .dwt import WAVELETS, SubbandSet, dwt2_level1, idwt2_level1  # noqa: F401
from .ripple import (  # noqa: F401
    ProposalParams, RippleState, nfc, ripple_entropy, window_bounds, window_entropy,
    window_nfc_map, salient_pixel, grow_ripple, flood_group, group_by_nfc,
)
from .propose import ProposalRegion, propose_in_subband, propose_regions  # noqa: F401
from .metrics import box_iou, proposal_recall, render_proposal_overlay  # noqa: F401
