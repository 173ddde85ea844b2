// Monotonic request sequencing: a response renders only if it belongs to
// the newest request, so the journey panel always matches the latest grid.

export class LatestOnly {
  private issued = 0;

  next(): number {
    return ++this.issued;
  }

  isCurrent(seq: number): boolean {
    return seq === this.issued;
  }
}
