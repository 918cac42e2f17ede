"""c4count: counting lemmas, polarity graphs and countability certificates
for C4-free hosts."""

from .certify import (
    ConnectorPart,
    EdgelessBase,
    GrowthReport,
    IslandPart,
    IslandsBridges,
    Pendant,
    PendantEdge,
    SubgraphRef,
    TameCertificate,
    ThreePath,
    Verdict,
    certificate_document,
    compute_scale_constant,
    load_certificate_document,
    refute_tame_empirical,
    search_countable,
    search_tame,
    verify_countable_cert,
    verify_tame_cert,
)
from .corpus import CorpusEntry, CorpusSummary, builtin_corpus, run_corpus
from .errors import InputError, PreconditionError, ResourceLimitError
from .graphs import (
    Graph,
    RootedPattern,
    canonical_form,
    cycle,
    girth,
    glue,
    is_c4_free,
    isomorphic,
    parse_edge_list,
    two_density_screen,
)
from .harness import (
    c4_counterexample,
    constant_host,
    counting_experiment,
    discrepancy_search,
    discrepancy_spectral,
    partition_host,
    triangle_break,
    triangle_counterexample,
    trim,
    truncation_check,
)
from .homcount import (
    DenseHost,
    SparseHost,
    VertexWeights,
    hom_brute,
    hom_subdivided_clique,
    hom_weighted,
    partial_profile,
    truncate_profile,
)
from .polarity import build_polarity, verify_polarity

__version__ = "0.1.0"
