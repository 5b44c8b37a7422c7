import { svgEl, svgRoot } from "./svg.js";
const LAYER_X = { subject: 0, verb: 1, object: 2 };
const COLUMN_WIDTH = 260;
const ROW_HEIGHT = 34;
const MARGIN = 40;
export function layoutTree(payload) {
    const byKind = { subject: [], verb: [], object: [] };
    for (const node of payload.nodes) {
        byKind[node.kind]?.push(node);
    }
    // objects group under their verb's vertical order
    const verbOrder = new Map(byKind.verb.map((v, i) => [v.id, i]));
    const objectParent = new Map();
    for (const edge of payload.edges) {
        if (verbOrder.has(edge.source)) {
            objectParent.set(edge.target, edge.source);
        }
    }
    byKind.object.sort((a, b) => (verbOrder.get(objectParent.get(a.id) ?? "") ?? 0) -
        (verbOrder.get(objectParent.get(b.id) ?? "") ?? 0) || a.label.localeCompare(b.label));
    const rows = Math.max(byKind.verb.length, byKind.object.length, 1);
    const height = rows * ROW_HEIGHT + 2 * MARGIN;
    const nodes = [];
    for (const kind of ["subject", "verb", "object"]) {
        const column = byKind[kind];
        const step = column.length > 0 ? height / (column.length + 1) : 0;
        column.forEach((node, i) => {
            nodes.push({
                ...node,
                x: MARGIN + LAYER_X[kind] * COLUMN_WIDTH,
                y: column.length === 1 && kind === "subject" ? height / 2 : step * (i + 1),
            });
        });
    }
    return { nodes, edges: payload.edges, width: 2 * COLUMN_WIDTH + 2 * MARGIN + 160, height };
}
export function renderTree(payload) {
    const layout = layoutTree(payload);
    const svg = svgRoot(layout.width, layout.height, "role-tree");
    const position = new Map(layout.nodes.map((n) => [n.id, n]));
    for (const edge of layout.edges) {
        const a = position.get(edge.source);
        const b = position.get(edge.target);
        if (!a || !b)
            continue;
        const group = svgEl("g", { class: "edge", "data-source": edge.source, "data-target": edge.target });
        group.appendChild(svgEl("path", {
            d: `M ${a.x + 8} ${a.y} C ${(a.x + b.x) / 2} ${a.y}, ${(a.x + b.x) / 2} ${b.y}, ${b.x - 8} ${b.y}`,
            fill: "none",
            stroke: "#9aa5b1",
            "stroke-width": Math.max(1, Math.min(6, Math.sqrt(edge.weight))),
        }));
        group.appendChild(svgEl("text", {
            x: (a.x + b.x) / 2,
            y: (a.y + b.y) / 2 - 4,
            class: "edge-weight",
            "text-anchor": "middle",
        }, String(edge.weight)));
        svg.appendChild(group);
    }
    for (const node of layout.nodes) {
        const group = svgEl("g", {
            class: `node node-${node.kind}`,
            "data-id": node.id,
            "data-weight": node.weight,
        });
        group.appendChild(svgEl("circle", { cx: node.x, cy: node.y, r: 6 }));
        group.appendChild(svgEl("text", { x: node.x + 10, y: node.y + 4, class: "node-label" }, node.label));
        svg.appendChild(group);
    }
    return svg;
}
