/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_tiling_free: (a: number, b: number) => void;
export const defectCurve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const scalarCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const tileRectangle: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const tiling_covered: (a: number) => number;
export const tiling_passed: (a: number) => number;
export const tiling_rects: (a: number) => [number, number];
export const tiling_remainderOk: (a: number) => number;
export const tiling_total: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
