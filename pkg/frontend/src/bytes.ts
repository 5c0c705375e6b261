// Byte-offset bookkeeping: the pipeline stores spans as UTF-8 byte
// offsets, JS strings index UTF-16 code units. A ByteIndex maps between
// the two for one fixed text.

export class ByteIndex {
  private byteToChar = new Map<number, number>();

  constructor(private text: string) {
    let byteOffset = 0;
    let charOffset = 0;
    this.byteToChar.set(0, 0);
    for (const ch of text) {
      byteOffset += byteLengthOf(ch);
      charOffset += ch.length; // UTF-16 code units, so substring() works
      this.byteToChar.set(byteOffset, charOffset);
    }
  }

  slice(span: [number, number]): string {
    return this.text.substring(this.charAt(span[0]), this.charAt(span[1]));
  }

  charAt(byteOffset: number): number {
    const exact = this.byteToChar.get(byteOffset);
    if (exact === undefined) {
      throw new RangeError(`byte offset ${byteOffset} is not a char boundary`);
    }
    return exact;
  }
}

function byteLengthOf(ch: string): number {
  const code = ch.codePointAt(0)!;
  if (code < 0x80) return 1;
  if (code < 0x800) return 2;
  if (code < 0x10000) return 3;
  return 4;
}
