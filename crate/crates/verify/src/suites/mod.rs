use crate::{Job, SuiteConfig};

mod characters;
mod cycles;
mod derangements;
mod linear;
mod products;
mod symbols;

pub type SuiteBuilder = fn(&SuiteConfig) -> Vec<Job>;

/// Registration order is output order for `all`.
pub static SUITES: &[(&str, SuiteBuilder)] = &[
    ("sym-char-orthogonality", characters::sym_char_orthogonality),
    ("frobenius-bruteforce", products::frobenius_bruteforce),
    ("class-cover", products::class_cover),
    ("bnp-inequality", products::bnp_inequality),
    ("gowers", products::gowers),
    ("witten-zeta", characters::witten_zeta),
    ("word-images", products::word_images),
    ("cycle-mod-counts", cycles::cycle_mod_counts),
    ("rising-factorial", cycles::rising_factorial),
    ("alt-threecycle-gap", cycles::alt_threecycle_gap),
    ("split-type-bound", cycles::split_type_bound),
    ("derangement-asymptotics", derangements::asymptotics),
    ("an-two-derangements", derangements::an_two_derangements),
    ("d-squared", derangements::d_squared),
    ("ell-criterion", derangements::ell_criterion),
    ("sl-strata", linear::sl_strata),
    ("fixedq-transvection", linear::fixedq_transvection),
    ("gauss-binomial", linear::gauss_binomial),
    ("symbols-core", symbols::symbols_core),
    ("symbols-bounded", symbols::symbols_bounded),
    ("symbols-classify", symbols::symbols_classify),
    ("unipotent-degree-bound", characters::unipotent_degree_bound),
    ("twelve-characters", characters::twelve_characters),
    ("mixing-l1", products::mixing_l1),
];
