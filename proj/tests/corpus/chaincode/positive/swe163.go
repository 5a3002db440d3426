package main

import "fmt"

func Dump() {
	balances := map[string]int{"a": 1, "b": 2}
	for k, v := range balances {
		fmt.Println(k, v)
	}
}
