//! Built-in scenarios and per-kind schema notes.

pub struct KindDoc {
    pub kind: &'static str,
    pub summary: &'static str,
    pub fields: &'static [(&'static str, &'static str)],
    pub csv: &'static str,
}

const MONOID: (&str, &str) = ("monoid", "\"N\", \"Z^2\", \"N x Z\", \"Z/2 x Z\", \"1\", or { semidirect = [[a, b], [c, d]] }");
const GROUP: (&str, &str) = ("group", "\"Z\", \"Z^r\", \"Z/2 x Z/4\", or { sum = [n_1, ...], over = <monoid> } (over defaults to the scenario monoid)");
const GENERATORS: (&str, &str) = (
    "generators",
    "one endomorphism per monoid coordinate: \"identity\", { scalar = k }, { matrix = [[...]] }, { shift = [offset] } or { shift = { by = [...], base = [[...]] } }",
);
const NET: (&str, &str) = ("net", "\"boxes\" (default), { translated = [elements] }, { canonical = [elements] }, { semidirect-boxes = { factor, power } }");
const PREFIX: (&str, &str) = ("prefix", "number of net indices read (overridden by --prefix)");
const BUDGET: (&str, &str) = ("budget", "element budget (overridden by --budget)");
const PLOT: (&str, &str) = ("plot", "write plot.svg of ratio against index (default false)");
const TITLE: (&str, &str) = ("title", "free text");

pub const KINDS: &[KindDoc] = &[
    KindDoc {
        kind: "folner-verify",
        summary: "defect ratios |F_i s △ F_i|/|F_i| of a net against a test set",
        fields: &[
            TITLE,
            MONOID,
            NET,
            ("test", "monoid elements, each an integer or a coordinate list"),
            PREFIX,
            PLOT,
            ("expect", "tail_at_most, non_increasing"),
        ],
        csv: "defects.csv: index,|F|,element,ratio",
    },
    KindDoc {
        kind: "canonical-net",
        summary: "the smallest boxes F_(E,n) with F s ~_(1/n) F for s in E; asserts the defect bound",
        fields: &[
            TITLE,
            MONOID,
            ("e", "monoid elements (default: generators and the identity)"),
            PREFIX,
            ("budget", "largest side searched"),
            PLOT,
            ("expect", "sides"),
        ],
        csv: "canonical.csv: n,side,|F|,defect",
    },
    KindDoc {
        kind: "tiling",
        summary: "greedy ε-tiling of a box by box tiles, checked exactly",
        fields: &[
            TITLE,
            MONOID,
            ("domain", "side lengths of D = [0, a_1) × ..."),
            ("tiles", "side lengths of each box tile, largest first"),
            ("eps", "ε as \"p/q\" or a number in (0, 1)"),
        ],
        csv: "tiling.csv: index,|F|,element,ratio (element = number of centers, ratio = share of |D|)",
    },
    KindDoc {
        kind: "semidirect-defect",
        summary: "δ_(n,m)(x) on ℤ²⋊ℤ for a range of n",
        fields: &[
            TITLE,
            ("matrix", "unimodular 2×2 matrix (default [[1, 1], [0, 1]])"),
            ("n", "inclusive range [lo, hi]"),
            ("m", "fixed m (default m = n)"),
            ("x", "element (v1, v2, c)"),
            BUDGET,
            PLOT,
            ("expect", "min, max"),
        ],
        csv: "defects.csv: index,|F|,element,ratio",
    },
    KindDoc {
        kind: "integral",
        summary: "f(F_i)/|F_i| along a net",
        fields: &[
            TITLE,
            MONOID,
            ("function", "\"card\", { constant = a } or { card-pi = [\"keep\" | \"drop\" | \"mod n\", ...] }"),
            NET,
            PREFIX,
            PLOT,
            ("expect", "ratio, tail_at_most, tail_near, tolerance"),
        ],
        csv: "integral.csv: index,|F|,f,ratio",
    },
    KindDoc {
        kind: "fubini",
        summary: "H_S(f_X) against H_C(Θ(f_X)) for a coordinate projection S → C",
        fields: &[
            TITLE,
            MONOID,
            GROUP,
            GENERATORS,
            ("seed", "{ set = [elements] }"),
            ("project_first", "number of leading coordinates kept by π"),
            ("section", "\"minimal\" (default) or \"identity\""),
            PREFIX,
            BUDGET,
            ("expect", "difference_at_most"),
        ],
        csv: "left.csv, right.csv: index,|F|,f,ratio",
    },
    KindDoc {
        kind: "entropy",
        summary: "ℓ(T_F(α, X))/|F| along a net, with exact trajectory sizes",
        fields: &[
            TITLE,
            MONOID,
            GROUP,
            GENERATORS,
            ("restrict", "{ monoid = <monoid>, embed = [[...], ...] } restricts α along an embedding"),
            ("seed", "{ set = [...] }, { subgroup = [...] }, { multiple = k }, { per-coordinate = [[...]] }, \"whole\", \"trivial\""),
            NET,
            PREFIX,
            BUDGET,
            PLOT,
            ("expect", "ratio, counts, tail_at_most, tail_near, tolerance"),
        ],
        csv: "entropy.csv: index,|F|,|T_F(X)|,ratio",
    },
    KindDoc {
        kind: "addition",
        summary: "ent(α) against ent(α_B) + ent(α_A/B), index by index",
        fields: &[
            TITLE,
            MONOID,
            GROUP,
            GENERATORS,
            ("sub", "invariant subgroup B (subgroup forms of seed)"),
            ("seed", "subgroup X generating the action"),
            NET,
            PREFIX,
            ("expect", "exact, difference_at_most"),
        ],
        csv: "addition.csv: index,|F|,|T(A)|,|T(B)|,|T(A/B)|,exact; addition.txt",
    },
    KindDoc {
        kind: "bridge",
        summary: "trajectory sizes against cotrajectory indices of the dual action",
        fields: &[
            TITLE,
            MONOID,
            GROUP,
            GENERATORS,
            ("seeds", "list of subgroups"),
            NET,
            PREFIX,
            ("budget", "largest finite dual computed"),
            PLOT,
            ("expect", "difference_at_most"),
        ],
        csv: "bridge.csv (bridge-k.csv for several seeds): index,|F|,ℓ(T_F),log-index,difference",
    },
    KindDoc {
        kind: "duality-props",
        summary: "annihilator laws and trajectory/cotrajectory equality over all groups up to an order",
        fields: &[
            TITLE,
            ("max_order", "largest group order (at most 1024)"),
            ("subgroup_cap", "enumerate lattices up to this size, sample beyond (default 1000)"),
            ("pair_cap", "pairs checked exhaustively up to this many subgroups, sampled beyond (default 50)"),
            ("endomorphisms", "random endomorphisms per group for the cotrajectory check (default 0)"),
            ("kmax", "longest interval [0, k) (default 4)"),
            ("rng_seed", "sampling seed (default 0)"),
        ],
        csv: "duality.csv: group,subgroups,exhaustive,pairs,ct_checks,ok",
    },
];

pub fn kind(name: &str) -> Option<&'static KindDoc> {
    KINDS.iter().find(|k| k.kind == name)
}

macro_rules! builtin {
    ($($name:literal),* $(,)?) => {
        pub const BUILTINS: &[(&str, &str)] = &[$(($name, include_str!(concat!("../scenarios/", $name, ".toml")))),*];
    };
}

builtin!(
    "example-4x",
    "example-4x-wide",
    "bernoulli-n-shift",
    "bernoulli-z-shift",
    "left-shift",
    "finite-index",
    "addition-z4",
    "quotient-vanishing",
    "card-pi-half",
    "card-pi-mod5",
    "fubini-desk",
    "semidirect-defect",
    "semidirect-defect-wide",
    "tiling-100",
    "folner-boxes",
    "canonical-z2",
    "bridge-shift",
    "bridge-finite",
    "duality-64",
    "duality-512",
);

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The first comment line of a scenario file.
pub fn header(text: &str) -> &str {
    text.lines().find_map(|l| l.strip_prefix('#')).map(str::trim).unwrap_or("")
}
