/** Trend panels drawn straight from API payloads: verb-rank trajectories,
 * monthly object-share pies with the Others bucket, cosine series lines and
 * the 2D shift scatter. Nothing is recomputed client-side; the values and
 * orderings plotted are exactly the ones the API returned.
 */
import type {
  DriftPayload,
  ProjectionPayload,
  RankingPayload,
  SharesPayload,
  SimilarityPayload,
} from "./types.js";
import { color, linearScale, svgEl, svgRoot } from "./svg.js";

export function bumpChart(payload: RankingPayload, topN = 6): SVGSVGElement {
  const months = Object.keys(payload.months).sort();
  const verbs: string[] = [];
  for (const month of months) {
    for (const row of payload.months[month]!.slice(0, topN)) {
      if (!verbs.includes(row.verb)) verbs.push(row.verb);
    }
  }
  const width = 480;
  const height = 40 + 26 * Math.max(topN, 1);
  const svg = svgRoot(width, height, "bump-chart");
  const x = linearScale([0, Math.max(months.length - 1, 1)], [70, width - 120]);
  const y = linearScale([1, Math.max(topN, 2)], [30, height - 20]);

  months.forEach((month, i) => {
    svg.appendChild(
      svgEl("text", { x: x(i), y: height - 4, class: "axis", "text-anchor": "middle" }, month),
    );
  });

  verbs.forEach((verb, vi) => {
    const points: [number, number][] = [];
    months.forEach((month, mi) => {
      const rank = payload.months[month]!.findIndex((row) => row.verb === verb);
      if (rank >= 0 && rank < topN) points.push([x(mi), y(rank + 1)]);
    });
    if (points.length === 0) return;
    const group = svgEl("g", { class: "bump-series", "data-verb": verb });
    if (points.length > 1) {
      group.appendChild(
        svgEl("polyline", {
          points: points.map(([px, py]) => `${px},${py}`).join(" "),
          fill: "none",
          stroke: color(vi),
          "stroke-width": 2,
        }),
      );
    }
    for (const [px, py] of points) {
      group.appendChild(svgEl("circle", { cx: px, cy: py, r: 4, fill: color(vi) }));
    }
    const last = points[points.length - 1]!;
    group.appendChild(
      svgEl("text", { x: last[0] + 8, y: last[1] + 4, class: "series-label" }, verb),
    );
    svg.appendChild(group);
  });
  return svg;
}

export function sharePies(payload: SharesPayload): SVGSVGElement {
  const months = Object.keys(payload.months).sort();
  const radius = 44;
  const cell = 2 * radius + 36;
  const legendLabels = months.length ? payload.months[months[0]!]!.map((e) => e.object) : [];
  const width = Math.max(cell * months.length, 200) + 150;
  const height = cell + 20 + 30;
  const svg = svgRoot(width, height, "share-pies");

  months.forEach((month, mi) => {
    const cx = cell * mi + cell / 2;
    const cy = cell / 2 + 10;
    const group = svgEl("g", { class: "pie", "data-month": month });
    let angle = -Math.PI / 2;
    payload.months[month]!.forEach((entry, ei) => {
      const sweep = entry.share * 2 * Math.PI;
      const a0 = angle;
      const a1 = angle + sweep;
      angle = a1;
      if (entry.share <= 0) return;
      const large = sweep > Math.PI ? 1 : 0;
      const p0 = [cx + radius * Math.cos(a0), cy + radius * Math.sin(a0)];
      const p1 = [cx + radius * Math.cos(a1), cy + radius * Math.sin(a1)];
      const d =
        entry.share >= 1
          ? `M ${cx - radius} ${cy} A ${radius} ${radius} 0 1 1 ${cx + radius} ${cy} A ${radius} ${radius} 0 1 1 ${cx - radius} ${cy}`
          : `M ${cx} ${cy} L ${p0[0]} ${p0[1]} A ${radius} ${radius} 0 ${large} 1 ${p1[0]} ${p1[1]} Z`;
      group.appendChild(
        svgEl("path", { d, fill: color(ei), "data-object": entry.object, "data-share": entry.share }),
      );
    });
    group.appendChild(
      svgEl("text", { x: cx, y: cell + 16, class: "axis", "text-anchor": "middle" }, month),
    );
    svg.appendChild(group);
  });

  const legend = svgEl("g", { class: "legend" });
  legendLabels.forEach((label, i) => {
    const ly = 18 + i * 16;
    legend.appendChild(
      svgEl("rect", { x: width - 140, y: ly - 9, width: 10, height: 10, fill: color(i) }),
    );
    legend.appendChild(
      svgEl("text", { x: width - 124, y: ly, class: "legend-label" }, label),
    );
  });
  svg.appendChild(legend);
  return svg;
}

export function driftLines(payload: DriftPayload): SVGSVGElement {
  const words = payload.candidates.map((c) => c.word);
  const width = 480;
  const height = 220;
  const svg = svgRoot(width, height, "drift-lines");
  const x = linearScale([0, Math.max(payload.slices.length - 1, 1)], [50, width - 110]);
  const y = linearScale([-1, 1], [height - 30, 16]);

  svg.appendChild(
    svgEl("line", { x1: 50, y1: y(0), x2: width - 110, y2: y(0), stroke: "#d7dce1" }),
  );
  payload.slices.forEach((slice, i) => {
    svg.appendChild(
      svgEl("text", { x: x(i), y: height - 8, class: "axis", "text-anchor": "middle" }, slice),
    );
  });

  words.forEach((word, wi) => {
    const series = payload.series[word];
    if (!series) return;
    const points = series.map((v, i) => `${x(i)},${y(v)}` as const);
    const group = svgEl("g", { class: "drift-series", "data-word": word });
    group.appendChild(
      svgEl("polyline", {
        points: points.join(" "),
        fill: "none",
        stroke: color(wi),
        "stroke-width": 2,
      }),
    );
    const lastY = y(series[series.length - 1] ?? 0);
    group.appendChild(
      svgEl("text", { x: width - 104, y: lastY + 4, class: "series-label" }, word),
    );
    svg.appendChild(group);
  });
  return svg;
}

export function similarityLine(payload: SimilarityPayload): SVGSVGElement {
  const width = 480;
  const height = 180;
  const svg = svgRoot(width, height, "similarity-line");
  const x = linearScale([0, Math.max(payload.slices.length - 1, 1)], [50, width - 30]);
  const y = linearScale([-1, 1], [height - 30, 16]);
  payload.slices.forEach((slice, i) => {
    svg.appendChild(
      svgEl("text", { x: x(i), y: height - 8, class: "axis", "text-anchor": "middle" }, slice),
    );
  });
  const known = payload.values
    .map((v, i) => [v, i] as const)
    .filter(([v]) => v !== null) as [number, number][];
  svg.appendChild(
    svgEl("polyline", {
      points: known.map(([v, i]) => `${x(i)},${y(v)}`).join(" "),
      fill: "none",
      stroke: color(0),
      "stroke-width": 2,
      class: "similarity-series",
      "data-word": payload.word,
    }),
  );
  for (const [v, i] of known) {
    svg.appendChild(svgEl("circle", { cx: x(i), cy: y(v), r: 3, fill: color(0) }));
  }
  return svg;
}

export function shiftScatter(payload: ProjectionPayload): SVGSVGElement {
  const width = 520;
  const height = 340;
  const svg = svgRoot(width, height, "shift-scatter");
  const xs = payload.points.map((p) => p.x);
  const ys = payload.points.map((p) => p.y);
  const pad = 1e-9;
  const x = linearScale([Math.min(...xs) - pad, Math.max(...xs) + pad], [30, width - 90]);
  const y = linearScale([Math.min(...ys) - pad, Math.max(...ys) + pad], [height - 24, 16]);
  for (const point of payload.points) {
    const isKey = point.label.startsWith(`${payload.key}_`);
    const group = svgEl("g", { class: "scatter-point", "data-label": point.label });
    group.appendChild(
      svgEl("circle", {
        cx: x(point.x),
        cy: y(point.y),
        r: isKey ? 5 : 3,
        fill: isKey ? "#e15759" : "#4e79a7",
      }),
    );
    group.appendChild(
      svgEl(
        "text",
        { x: x(point.x) + 6, y: y(point.y) + 3, class: "scatter-label" },
        point.label,
      ),
    );
    svg.appendChild(group);
  }
  return svg;
}
