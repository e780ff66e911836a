/**
 * Minimal graph6 reader, used only to draw edges.
 *
 * Session responses identify the board by its graph6 code; everything
 * the game needs (legality, protection, colors) arrives separately in
 * the state view, so this decoder feeds the renderer and nothing else.
 */

export interface DecodedGraph {
  n: number;
  edges: [number, number][];
}

const OFFSET = 63;

function byteValues(code: string): number[] {
  const values: number[] = [];
  for (let i = 0; i < code.length; i++) {
    const value = code.charCodeAt(i) - OFFSET;
    if (value < 0 || value > 63) {
      throw new Error(`invalid graph6 character at position ${i}`);
    }
    values.push(value);
  }
  return values;
}

/** Decode a graph6 string into its order and edge list. */
export function decodeGraph6(code: string): DecodedGraph {
  const values = byteValues(code.trim());
  if (values.length === 0) {
    throw new Error("empty graph6 string");
  }
  let n: number;
  let body: number[];
  if (values[0] < 63) {
    n = values[0];
    body = values.slice(1);
  } else {
    // long form: '~' then three sextets holding an 18-bit order
    if (values.length < 4 || values[1] === 63) {
      throw new Error("unsupported graph6 header");
    }
    n = (values[1] << 12) | (values[2] << 6) | values[3];
    body = values.slice(4);
  }
  const bitsNeeded = (n * (n - 1)) / 2;
  if (body.length < Math.ceil(bitsNeeded / 6)) {
    throw new Error("graph6 string shorter than its header promises");
  }
  const edges: [number, number][] = [];
  let bit = 0;
  for (let j = 1; j < n; j++) {
    for (let i = 0; i < j; i++) {
      const chunk = body[Math.floor(bit / 6)];
      const mask = 1 << (5 - (bit % 6));
      if ((chunk & mask) !== 0) {
        edges.push([i, j]);
      }
      bit += 1;
    }
  }
  return { n, edges };
}
