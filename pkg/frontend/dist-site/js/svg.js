/** Tiny SVG construction helpers (no framework, document must be global). */
export const SVG_NS = "http://www.w3.org/2000/svg";
export function svgEl(tag, attrs = {}, text) {
    const el = document.createElementNS(SVG_NS, tag);
    for (const [k, v] of Object.entries(attrs)) {
        el.setAttribute(k, String(v));
    }
    if (text !== undefined) {
        el.textContent = text;
    }
    return el;
}
export function svgRoot(width, height, cls) {
    return svgEl("svg", {
        width,
        height,
        viewBox: `0 0 ${width} ${height}`,
        class: cls,
        role: "img",
    });
}
export function linearScale(domain, range) {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const span = d1 - d0 || 1;
    return (x) => r0 + ((x - d0) / span) * (r1 - r0);
}
export const PALETTE = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
];
export function color(i) {
    return PALETTE[i % PALETTE.length];
}
