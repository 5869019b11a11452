from libknots.commands import (
    bounds,
    build_kn,
    catalog,
    double,
    eqsum,
    half,
    inv,
    mirror,
    seifert_matrix,
    sig,
    stab,
    sum_,
    validate,
)

CMD_LIST = (
    validate.install_parser,
    inv.install_parser,
    sig.install_parser,
    bounds.install_parser,
    stab.install_parser,
    half.install_parser,
    double.install_parser,
    eqsum.install_parser,
    build_kn.install_parser,
    sum_.install_parser,
    mirror.install_parser,
    catalog.install_parser,
    seifert_matrix.install_parser,
)
