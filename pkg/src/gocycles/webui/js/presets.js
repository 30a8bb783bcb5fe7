// New-game presets offered by the form, including boards where a strategy
// engine refuses to play (the server's reason is surfaced as a toast).
export const PRESETS = [
    {
        name: "Two odd cycles 5+7 vs mirror-reverse engine",
        request: {
            cactus: { cycles: [5, 7], joins: [[0, 0, 1, 0]] },
            engine: "mmr",
            engine_role: 2,
        },
    },
    {
        name: "Chain 5-9-7 vs mirror-reverse engine (engine opens)",
        request: {
            cactus: { cycles: [5, 9, 7], joins: [[1, 7, 0, 0], [1, 3, 2, 0]] },
            engine: "mmr",
            engine_role: 1,
        },
    },
    {
        name: "Chain 5-8-7 vs mirror-reverse engine",
        request: {
            cactus: { cycles: [5, 8, 7], joins: [[1, 6, 0, 0], [1, 2, 2, 0]] },
            engine: "mmr",
            engine_role: 2,
        },
    },
    {
        name: "Triangle + 5-cycle vs triangle engine (engine opens)",
        request: {
            cactus: { cycles: [3, 5], joins: [[0, 0, 1, 0]] },
            engine: "triangle",
            engine_role: 1,
        },
    },
    {
        name: "Cycle C4 vs perfect engine (engine opens)",
        request: { cycle: 4, engine: "perfect", engine_role: 1 },
    },
    {
        name: "Cycle C5 vs perfect engine",
        request: { cycle: 5, engine: "perfect", engine_role: 2 },
    },
    {
        name: "Cycle C6, no engine (hot-seat)",
        request: { cycle: 6 },
    },
    {
        name: "Four-cycle cactus where mirror-reverse is inapplicable",
        request: {
            cactus: {
                cycles: [5, 9, 7, 5],
                joins: [[1, 7, 0, 0], [1, 3, 2, 0], [2, 6, 3, 0]],
            },
            engine: "mmr",
            engine_role: 2,
        },
    },
];
