"""Writes data/toy_corpus.jsonl from the hand-written pairs below."""
import json
import pathlib

TRAIN = [
    ("int max(int a, int b) { int max = a; if (a < b) { max = b; } return max; }",
     "Returns the larger of two integers."),
    ("int min(int a, int b) { if (a < b) { return a; } return b; }",
     "Returns the smaller of two integers."),
    ("int sum(int[] values) { int total = 0; for (int i = 0; i < values.length; i++) { total += values[i]; } return total; }",
     "Computes the sum of an integer array."),
    ("boolean isEmpty() { return size == 0; }",
     "Checks whether this collection is empty."),
    ("int getSize() { return size; }",
     "Gets the number of stored elements."),
    ("void clear() { size = 0; head = null; }",
     "Removes all elements from the list."),
    ("void setName(String name) { this.name = name; }",
     "Sets the name of this item."),
    ("String getName() { return name; }",
     "Returns the name of this item."),
    ("boolean contains(int[] values, int key) { for (int i = 0; i < values.length; i++) { if (values[i] == key) { return true; } } return false; }",
     "Tests whether the array contains the given key."),
    ("int indexOf(int[] values, int key) { int i = 0; while (i < values.length) { if (values[i] == key) { return i; } i++; } return -1; }",
     "Finds the first index of a key in the array."),
    ("int factorial(int n) { int result = 1; for (int i = 2; i <= n; i++) { result = result * i; } return result; }",
     "Computes the factorial of n."),
    ("int abs(int x) { return x < 0 ? -x : x; }",
     "Returns the absolute value of x."),
    ("void log(String message) { System.out.println(\"log: \" + message); }",
     "Prints a log message to standard output."),
    ("void checkNotNull(Object value) { if (value == null) { throw new IllegalArgumentException(\"value is null\"); } }",
     "Throws an exception when the value is null."),
    ("int countPositive(int[] nums) { int count = 0; for (int i = 0; i < nums.length; i++) { if (nums[i] > 0) { count++; } } return count; }",
     "Counts the positive numbers in the array."),
    ("double average(int[] values) { if (values.length == 0) { return 0; } return (double) sum(values) / values.length; }",
     "Computes the average of the values."),
    ("void swap(int[] a, int i, int j) { int tmp = a[i]; a[i] = a[j]; a[j] = tmp; }",
     "Swaps two elements of an array."),
    ("boolean isEven(int n) { return n % 2 == 0; }",
     "Checks if a number is even."),
    ("int fib(int n) { if (n < 2) { return n; } return fib(n - 1) + fib(n - 2); }",
     "Computes the nth fibonacci number recursively."),
    ("String dayName(int day) { switch (day) { case 0: return \"sunday\"; case 6: return \"saturday\"; default: return \"weekday\"; } }",
     "Maps a day number to its name."),
    ("int parseOrZero(String text) { try { return Integer.parseInt(text); } catch (NumberFormatException e) { return 0; } }",
     "Parses an integer or returns zero on failure."),
    ("void closeQuietly(Closeable c) { try { c.close(); } catch (IOException e) { } }",
     "Closes a resource and ignores errors."),
    ("void addItem(Item item) { if (item != null) { items.add(item); count++; } }",
     "Adds a non null item to the collection."),
    ("boolean removeItem(Item item) { boolean removed = items.remove(item); if (removed) { count--; } return removed; }",
     "Removes an item and updates the count."),
    ("int power(int base, int exp) { int result = 1; while (exp > 0) { result *= base; exp--; } return result; }",
     "Raises base to the given power."),
    ("int gcd(int a, int b) { while (b != 0) { int t = b; b = a % b; a = t; } return a; }",
     "Computes the greatest common divisor."),
    ("void reset() { index = 0; done = false; }",
     "Resets the iterator to the start."),
    ("boolean hasNext() { return index < size; }",
     "Checks whether more elements remain."),
    ("int next() { int value = data[index]; index++; return value; }",
     "Returns the next element and advances."),
    ("void printAll(int[] values) { for (int i = 0; i < values.length; i++) { System.out.println(values[i]); } }",
     "Prints every value on its own line."),
    ("int clamp(int value, int low, int high) { if (value < low) { return low; } if (value > high) { return high; } return value; }",
     "Clamps a value to the given range."),
    ("String greet(String name) { return \"hello \" + name; }",
     "Builds a greeting for the given name."),
]

VALID = [
    ("int max3(int a, int b, int c) { return max(max(a, b), c); }",
     "Returns the largest of three integers."),
    ("int product(int[] values) { int total = 1; for (int i = 0; i < values.length; i++) { total *= values[i]; } return total; }",
     "Computes the product of an integer array."),
    ("boolean isOdd(int n) { return n % 2 != 0; }",
     "Checks if a number is odd."),
    ("void setSize(int size) { this.size = size; }",
     "Sets the number of stored elements."),
    ("int countZero(int[] nums) { int count = 0; for (int i = 0; i < nums.length; i++) { if (nums[i] == 0) { count++; } } return count; }",
     "Counts the zeros in the array."),
    ("void warn(String message) { System.out.println(\"warn: \" + message); }",
     "Prints a warning message to standard output."),
    ("int last(int[] values) { if (values.length == 0) { return -1; } return values[values.length - 1]; }",
     "Returns the last element of the array."),
    ("int broken(int a) { goto done; }",
     "Uses an unsupported construct."),
]

root = pathlib.Path(__file__).resolve().parent.parent
with open(root / "data" / "toy_corpus.jsonl", "w") as out:
    for split, pairs in (("train", TRAIN), ("valid", VALID)):
        for code, summary in pairs:
            out.write(json.dumps({"code": code, "summary": summary, "split": split}) + "\n")
