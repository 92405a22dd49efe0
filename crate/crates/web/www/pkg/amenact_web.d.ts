/* tslint:disable */
/* eslint-disable */

export class Tiling {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly covered: number;
    readonly passed: boolean;
    /**
     * Flattened `[tile, x, y, width, height]` rows.
     */
    readonly rects: Int32Array;
    readonly remainderOk: boolean;
    readonly total: number;
}

/**
 * `m = 0` means `m = n`.
 */
export function defectCurve(lo: number, hi: number, m: number, x1: number, x2: number, c: number): Float64Array;

export function scalarCurve(k: number, seed: Int32Array, prefix: number): Float64Array;

/**
 * `undefined` when the greedy tiler finds no witness.
 */
export function tileRectangle(width: number, height: number, sides: Uint32Array, eps_num: number, eps_den: number): Tiling | undefined;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_tiling_free: (a: number, b: number) => void;
    readonly defectCurve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly scalarCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly tileRectangle: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly tiling_covered: (a: number) => number;
    readonly tiling_passed: (a: number) => number;
    readonly tiling_rects: (a: number) => [number, number];
    readonly tiling_remainderOk: (a: number) => number;
    readonly tiling_total: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
