//! Regression fixtures: inputs with independently known answers, used by
//! the `examples` subcommand and the integration tests.

#[derive(Debug, Clone, Copy)]
pub enum FixtureInput {
    Pattern(&'static str),
    Ideal(&'static str),
}

#[derive(Debug, Clone, Copy)]
pub struct PdFixture {
    pub input: FixtureInput,
    pub expected: usize,
}

/// Projective-dimension fixtures. Every value was verified two independent
/// ways (closed formula and recursion, and the resolution oracle where the
/// size permits).
pub const PD_FIXTURES: &[PdFixture] = &[
    PdFixture {
        input: FixtureInput::Pattern("ccoococ"),
        expected: 5,
    },
    PdFixture {
        input: FixtureInput::Pattern("coooococcoc"),
        expected: 8,
    },
    PdFixture {
        input: FixtureInput::Ideal("ab,bc,cde,ef,fg"),
        expected: 4,
    },
    PdFixture {
        input: FixtureInput::Pattern("cocooocccoooooc"),
        expected: 11,
    },
    PdFixture {
        input: FixtureInput::Pattern("cooooococcooocc"),
        expected: 11,
    },
    PdFixture {
        input: FixtureInput::Pattern("cocooococ"),
        expected: 6,
    },
    PdFixture {
        input: FixtureInput::Pattern("cococoooc"),
        expected: 7,
    },
    PdFixture {
        input: FixtureInput::Pattern("cycle:cocoooocccocooco"),
        expected: 12,
    },
    PdFixture {
        input: FixtureInput::Pattern("cycle:cocoooco"),
        expected: 6,
    },
    PdFixture {
        input: FixtureInput::Pattern("cycle:cooocooooo"),
        expected: 7,
    },
    PdFixture {
        input: FixtureInput::Ideal("ab,bcd,de,efg"),
        expected: 3,
    },
    PdFixture {
        input: FixtureInput::Pattern("cycle:ccocoococooooo"),
        expected: 10,
    },
    PdFixture {
        input: FixtureInput::Pattern("cycle:cooooc"),
        expected: 4,
    },
    PdFixture {
        input: FixtureInput::Pattern("cococ"),
        expected: 4,
    },
    PdFixture {
        input: FixtureInput::Pattern("coooocooooococ"),
        expected: 10,
    },
    PdFixture {
        input: FixtureInput::Pattern("cocooooocoococ"),
        expected: 10,
    },
    PdFixture {
        input: FixtureInput::Pattern("cococococ"),
        expected: 7,
    },
    PdFixture {
        input: FixtureInput::Pattern("cocococ"),
        expected: 5,
    },
];

#[derive(Debug, Clone, Copy)]
pub struct InvariantFixture {
    pub pattern: &'static str,
    pub mu: usize,
    pub s: usize,
    pub b: usize,
    pub m: usize,
}

pub const INVARIANT_FIXTURES: &[InvariantFixture] = &[
    InvariantFixture {
        pattern: "coooococcoc",
        mu: 11,
        s: 3,
        b: 4,
        m: 1,
    },
    InvariantFixture {
        pattern: "cycle:cocoooocccocooco",
        mu: 16,
        s: 5,
        b: 6,
        m: 2,
    },
    InvariantFixture {
        pattern: "cycle:ccocoococooooo",
        mu: 14,
        s: 4,
        b: 5,
        m: 1,
    },
    InvariantFixture {
        pattern: "cococococ",
        mu: 9,
        s: 4,
        b: 4,
        m: 2,
    },
    InvariantFixture {
        pattern: "cocococ",
        mu: 7,
        s: 3,
        b: 3,
        m: 1,
    },
];

#[derive(Debug, Clone, Copy)]
pub struct CmFixture {
    pub pattern: &'static str,
    pub is_cm: bool,
}

pub const CM_FIXTURES: &[CmFixture] = &[
    CmFixture {
        pattern: "c",
        is_cm: true,
    },
    CmFixture {
        pattern: "coc",
        is_cm: true,
    },
    CmFixture {
        pattern: "ccc",
        is_cm: false,
    },
    CmFixture {
        pattern: "cycle:cocoo",
        is_cm: true,
    },
    CmFixture {
        pattern: "cycle:ccooo",
        is_cm: false,
    },
    CmFixture {
        pattern: "cycle:ooo",
        is_cm: true,
    },
    CmFixture {
        pattern: "cycle:ccc",
        is_cm: false,
    },
];
