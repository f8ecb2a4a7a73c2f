"""Exact Weisfeiler-Leman / GNN / VC-bound toolkit."""

from ._core import (  # noqa: F401
    Dyadic,
    ExtractionForest,
    ExtractionLedger,
    ExtractionReport,
    FnnDag,
    GnnSpec,
    Graph,
    InternalError,
    IoError,
    ParseError,
    PreconditionError,
    QuotientGraph,
    ShatterReadout,
    TuDataset,
    UnrolledFnn,
    VcUpper,
    __version__,
    as_undirected,
    asymptotic_class,
    build_extraction_gnn,
    build_histogram_shatter,
    code_set,
    collapse_fnn,
    color_complexity,
    count_distinguishable,
    count_distinguishable_upto,
    default_cache_root,
    disjoint_union,
    eval_on_quotient,
    expand_bitlength,
    fetch_dataset,
    fnn_eval,
    gen_extraction_forest,
    gen_tree_family,
    gnn_eval,
    graph_from_json,
    graph_to_json,
    k_bound,
    ledger,
    lemma17_bound,
    nodes_at_layer,
    param_count,
    param_count_uniform,
    parse_tud,
    permute,
    pow2,
    read_graph_set,
    read_spec,
    reduce,
    regime,
    rho,
    rho_shift,
    sample_complexity,
    shatter_code,
    shatter_eval,
    spec_bitlength,
    stable_coloring,
    unroll,
    unroll_inputs,
    unroll_multi,
    vc_upper,
    vc_upper_scan,
    verify_bit_extraction,
    verify_shatter,
    wlk_distinguishes,
    write_graph_set,
    write_spec,
)
